use std::ffi::{CStr, CString};
use std::ptr;

use occwalk_ffi::*;

fn cstrs(v: &[&str]) -> Vec<CString> {
    v.iter().map(|s| CString::new(*s).unwrap()).collect()
}

unsafe fn graph(edges: &[(&str, &str)]) -> *mut OwGraph {
    let src = cstrs(&edges.iter().map(|e| e.0).collect::<Vec<_>>());
    let dst = cstrs(&edges.iter().map(|e| e.1).collect::<Vec<_>>());
    let sp: Vec<_> = src.iter().map(|c| c.as_ptr()).collect();
    let dp: Vec<_> = dst.iter().map(|c| c.as_ptr()).collect();
    let mut g = ptr::null_mut();
    assert_eq!(ow_graph_from_edges(sp.as_ptr(), dp.as_ptr(), ptr::null(), sp.len(), &mut g), OwStatus::Ok);
    g
}

unsafe fn last_error() -> String {
    CStr::from_ptr(ow_last_error_message()).to_string_lossy().into_owned()
}

#[test]
fn path_graph_occupations() {
    unsafe {
        let g = graph(&[("a", "b"), ("b", "c")]);
        assert_eq!(ow_graph_node_count(g), 3);
        assert_eq!(ow_graph_edge_count(g), 2);
        assert_eq!(CStr::from_ptr(ow_graph_node_label(g, 1)).to_str().unwrap(), "b");
        assert!(ow_graph_node_label(g, 3).is_null());

        let mut op_c = [0.0; 3];
        assert_eq!(ow_classical_occupation(g, op_c.as_mut_ptr(), 3), OwStatus::Ok);
        assert_eq!(op_c, [0.25, 0.5, 0.25]);

        let mut euler = [0.0; 3];
        let mut converged = false;
        let st = ow_classical_euler(
            g,
            OwGenerator::Normalized,
            1.0,
            0.0,
            1e4,
            1e-12,
            euler.as_mut_ptr(),
            3,
            &mut converged,
        );
        assert_eq!(st, OwStatus::Ok);
        assert!(converged);
        for (a, b) in euler.iter().zip(&op_c) {
            assert!((a - b).abs() < 1e-8);
        }

        let st = ow_classical_euler(g, OwGenerator::UnnormalizedRate, 1.0, 0.0, 1e4, 1e-12, euler.as_mut_ptr(), 3, ptr::null_mut());
        assert_eq!(st, OwStatus::Ok);
        for x in euler {
            assert!((x - 1.0 / 3.0).abs() < 1e-8);
        }

        let mut op_q = [0.0; 3];
        assert_eq!(ow_quantum_occupation(g, ptr::null(), op_q.as_mut_ptr(), 3), OwStatus::Ok);
        assert!((op_q.iter().sum::<f64>() - 1.0).abs() < 1e-9);

        let node = CString::new("a").unwrap();
        let mut numeric = [0.0; 3];
        assert_eq!(
            ow_quantum_occupation_leapfrog(g, node.as_ptr(), 0.01, 500.0, numeric.as_mut_ptr(), 3),
            OwStatus::Ok
        );
        let mut exact = [0.0; 3];
        assert_eq!(ow_quantum_occupation(g, node.as_ptr(), exact.as_mut_ptr(), 3), OwStatus::Ok);
        for (a, b) in numeric.iter().zip(&exact) {
            assert!((a - b).abs() < 5e-3);
        }

        let (mut overlap, mut rho) = (0.0, 0.0);
        assert_eq!(
            ow_compare_rankings(g, op_c.as_ptr(), op_c.as_ptr(), 3, 2, &mut overlap, &mut rho),
            OwStatus::Ok
        );
        assert_eq!((overlap, rho), (1.0, 1.0));
        ow_graph_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let src = cstrs(&["a", "b"]);
        let dst = cstrs(&["b", "a"]);
        let sp: Vec<_> = src.iter().map(|c| c.as_ptr()).collect();
        let dp: Vec<_> = dst.iter().map(|c| c.as_ptr()).collect();
        let mut g = ptr::null_mut();
        assert_eq!(ow_graph_from_edges(sp.as_ptr(), dp.as_ptr(), ptr::null(), 2, &mut g), OwStatus::DuplicateEdge);
        assert!(g.is_null());
        assert!(last_error().contains("duplicate edge"));

        let w = [-1.0];
        assert_eq!(ow_graph_from_edges(sp.as_ptr(), dp.as_ptr(), w.as_ptr(), 1, &mut g), OwStatus::NonPositiveWeight);

        let loops = cstrs(&["a"]);
        let lp: Vec<_> = loops.iter().map(|c| c.as_ptr()).collect();
        assert_eq!(ow_graph_from_edges(lp.as_ptr(), lp.as_ptr(), ptr::null(), 1, &mut g), OwStatus::SelfLoop);

        assert_eq!(ow_graph_from_edges(ptr::null(), ptr::null(), ptr::null(), 1, &mut g), OwStatus::NullPointer);

        let g = graph(&[("a", "b"), ("c", "d")]);
        let mut out = [0.0; 4];
        assert_eq!(ow_classical_occupation(g, out.as_mut_ptr(), 4), OwStatus::DisconnectedGraph);
        assert_eq!(ow_classical_occupation(g, out.as_mut_ptr(), 3), OwStatus::DimensionMismatch);
        let nobody = CString::new("zz").unwrap();
        assert_eq!(ow_quantum_occupation(g, nobody.as_ptr(), out.as_mut_ptr(), 4), OwStatus::UnknownNode);
        ow_graph_free(g);

        let mut ba = ptr::null_mut();
        assert_eq!(ow_barabasi_albert(10, 10, 1, &mut ba), OwStatus::InvalidConfig);
        let missing = CString::new("/nonexistent/occwalk.csv").unwrap();
        assert_eq!(ow_graph_load_csv(missing.as_ptr(), &mut ba), OwStatus::IoError);
        ow_graph_free(ptr::null_mut());
    }
}

#[test]
fn ba_and_multilayer_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ow_barabasi_albert(101, 2, 7, &mut g), OwStatus::Ok);
        assert_eq!(ow_graph_edge_count(g), 198);
        ow_graph_free(g);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ml.csv");
        std::fs::write(&path, "layer,source,target,weight\nx,a,b,1\ny,b,a,2\ny,b,c,1\n").unwrap();
        let cpath = CString::new(path.to_str().unwrap()).unwrap();
        let mut ml = ptr::null_mut();
        assert_eq!(ow_multilayer_load_csv(cpath.as_ptr(), &mut ml), OwStatus::Ok);
        assert_eq!(ow_multilayer_layer_count(ml), 2);
        assert_eq!(ow_multilayer_actor_count(ml), 3);
        let mut flat = ptr::null_mut();
        assert_eq!(ow_multilayer_flatten(ml, OwFlattenMode::Sum, &mut flat), OwStatus::Ok);
        assert_eq!(ow_graph_edge_count(flat), 2);
        let mut op_c = [0.0; 3];
        assert_eq!(ow_classical_occupation(flat, op_c.as_mut_ptr(), 3), OwStatus::Ok);
        // strengths a:3, b:4, c:1
        assert_eq!(op_c, [3.0 / 8.0, 0.5, 1.0 / 8.0]);
        ow_graph_free(flat);
        ow_multilayer_free(ml);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/occwalk.h");
    for sym in [
        "ow_version",
        "ow_last_error_message",
        "ow_graph_from_edges",
        "ow_graph_load_csv",
        "ow_graph_free",
        "ow_classical_occupation",
        "ow_classical_euler",
        "ow_quantum_occupation",
        "ow_quantum_occupation_leapfrog",
        "ow_compare_rankings",
        "ow_barabasi_albert",
        "ow_multilayer_load_csv",
        "ow_multilayer_flatten",
        "ow_multilayer_free",
        "typedef struct OwGraph OwGraph",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
    let v = unsafe { CStr::from_ptr(ow_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
