use std::ffi::{CStr, CString};
use std::ptr;

use catmouse_ffi::*;

fn last_error() -> String {
    let p = cm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn named(name: &str, k: usize) -> *mut CmGraph {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cm_graph_named(name.as_ptr(), k, &mut g) }, CmStatus::Ok);
    g
}

#[test]
fn t_star_original_game_is_a_mouse_win() {
    let g = named("t_star", 0);
    assert_eq!(unsafe { cm_graph_vertex_count(g) }, 10);
    let mut r = CmSolveResult::default();
    let s = unsafe { cm_solve(g, CmChannel::Binary, CmMovement::MustMove, &mut r) };
    assert_eq!(s, CmStatus::Ok);
    assert_eq!(r.cat_wins, 0);
    let s = unsafe { cm_solve(g, CmChannel::Coarse, CmMovement::MustMove, &mut r) };
    assert_eq!(s, CmStatus::Ok);
    assert_eq!(r.cat_wins, 1);
    assert!(r.optimal_rounds > 0);
    unsafe { cm_graph_free(g) };
}

#[test]
fn simulate_and_read_the_trace() {
    let text = CString::new("3 2\n0 1\n1 2\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cm_graph_parse(text.as_ptr(), &mut g) }, CmStatus::Ok);
    let mut game = ptr::null_mut();
    let s = unsafe {
        cm_simulate(g, CmChannel::CoarseCmp, CmMovement::MustMove, CmCat::Forest, CmMouse::PhantomGreedy, 0, 100, &mut game)
    };
    assert_eq!(s, CmStatus::Ok);
    assert_eq!(unsafe { cm_game_outcome(game) }, CmOutcome::CatWins);
    let rounds = unsafe { cm_game_rounds(game) };
    let mut trace = ptr::null_mut();
    assert_eq!(unsafe { cm_game_trace(game, &mut trace) }, CmStatus::Ok);
    let owned = unsafe { CStr::from_ptr(trace) }.to_str().unwrap().to_string();
    assert_eq!(owned.lines().filter(|l| l.starts_with("round=")).count(), rounds);
    unsafe {
        cm_string_free(trace);
        cm_game_free(game);
        cm_graph_free(g);
    }
}

#[test]
fn errors_set_a_status_and_a_message() {
    let bad = CString::new("2 1\n0 5\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cm_graph_parse(bad.as_ptr(), &mut g) }, CmStatus::Graph);
    assert!(g.is_null());
    assert!(last_error().contains('5'), "{}", last_error());

    assert_eq!(unsafe { cm_graph_parse(ptr::null(), &mut g) }, CmStatus::NullPointer);

    let c4 = named("cycle", 4);
    let mut game = ptr::null_mut();
    let s = unsafe {
        cm_simulate(c4, CmChannel::CoarseCmp, CmMovement::MustMove, CmCat::Forest, CmMouse::Cycle, 0, 10, &mut game)
    };
    assert_eq!(s, CmStatus::Strategy);
    assert!(last_error().contains("cycle"));
    unsafe { cm_graph_free(c4) };

    let unknown = CString::new("nope").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { cm_verify(unknown.as_ptr(), 0, &mut report) }, CmStatus::InvalidArgument);
    assert!(report.is_null());
}

#[test]
fn verify_returns_the_report() {
    let suite = CString::new("seager-demo").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { cm_verify(suite.as_ptr(), 0, &mut report) }, CmStatus::Ok);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
    assert!(text.starts_with("suite=seager-demo "), "{text}");
    assert!(text.contains(" failures=0 "));
    unsafe { cm_string_free(report) };
}

#[test]
fn freeing_null_is_a_no_op() {
    unsafe {
        cm_graph_free(ptr::null_mut());
        cm_game_free(ptr::null_mut());
        cm_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { cm_graph_vertex_count(ptr::null()) }, 0);
}
