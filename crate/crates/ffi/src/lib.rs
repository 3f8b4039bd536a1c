//! C ABI over the `catmouse` crate.
//!
//! Graphs and finished games are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`CmStatus`]; on failure `cm_last_error` describes the most recent error
//! on the calling thread. Strings returned through out-pointers belong to the
//! caller and are released with [`cm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use catmouse::cat::{forest_cat, seager_demo_cat, solver_cat, tstar_weakened_cat};
use catmouse::graph::{make_named, parse_graph, ForestCheck, Graph};
use catmouse::mouse::{cycle_mouse, path_mouse, phantom_adversary, random_mouse, PhantomMode};
use catmouse::rules::{
    play_game, CatStrategy, Channel, GameResult, MouseAgent, Movement, Outcome, RuleSet,
};
use catmouse::solver::{solve, SolvedGame, SolverLimits};
use catmouse::suites::run_suite;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Graph = 4,
    Strategy = 5,
    Solver = 6,
    Game = 7,
    /// The suite ran and recorded at least one failure.
    SuiteFailed = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmChannel {
    Binary = 0,
    Coarse = 1,
    CoarseCmp = 2,
    CmpOnly = 3,
    Exact = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmMovement {
    MustMove = 0,
    MayStayAvoidCat = 1,
    MustMoveAvoidCat = 2,
    MayStay = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmCat {
    /// Tree strategy, component by component.
    Forest = 0,
    TstarScript = 1,
    SeagerDemo = 2,
    Solver = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmMouse {
    PhantomGreedy = 0,
    PhantomExact = 1,
    Cycle = 2,
    Path = 3,
    /// Seeded by the `seed` argument.
    Random = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmOutcome {
    CatWins = 0,
    MouseSurvivedHorizon = 1,
    MouseNoLegalMove = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CmSolveResult {
    /// 1 if the cat has a winning strategy, else 0.
    pub cat_wins: u8,
    /// Optimal capture round; 0 when the mouse wins.
    pub optimal_rounds: u32,
    pub states_explored: usize,
}

/// Opaque graph handle.
pub struct CmGraph(Graph);

/// Opaque handle to a finished game.
pub struct CmGame(GameResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Error(CmStatus, String);

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, records its error message, and turns panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> CmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CmStatus::Ok,
        Ok(Err(Error(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CmStatus::Panic
        }
    }
}

fn with<E: std::fmt::Display>(status: CmStatus) -> impl Fn(E) -> Error {
    move |e| Error(status, e.to_string())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error(CmStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(with(CmStatus::InvalidUtf8))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Error> {
    p.as_ref()
        .ok_or_else(|| Error(CmStatus::NullPointer, "null handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Error> {
    p.as_mut()
        .ok_or_else(|| Error(CmStatus::NullPointer, "null out-pointer".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn rules(channel: CmChannel, movement: CmMovement) -> RuleSet {
    let channel = match channel {
        CmChannel::Binary => Channel::Binary,
        CmChannel::Coarse => Channel::Coarse,
        CmChannel::CoarseCmp => Channel::CoarseCmp,
        CmChannel::CmpOnly => Channel::CmpOnly,
        CmChannel::Exact => Channel::Exact,
    };
    let movement = match movement {
        CmMovement::MustMove => Movement::MustMove,
        CmMovement::MayStayAvoidCat => Movement::MayStayAvoidCat,
        CmMovement::MustMoveAvoidCat => Movement::MustMoveAvoidCat,
        CmMovement::MayStay => Movement::MayStay,
    };
    RuleSet::new(channel, movement)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn cm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the `n m` / `u v` edge-list format.
///
/// # Safety
/// `source` is a nul-terminated string; `out_graph` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_parse(source: *const c_char, out_graph: *mut *mut CmGraph) -> CmStatus {
    guard(|| {
        let slot = out(out_graph)?;
        let g = parse_graph(text(source)?).map_err(with(CmStatus::Graph))?;
        *slot = Box::into_raw(Box::new(CmGraph(g)));
        Ok(())
    })
}

/// Named shape: `path`, `cycle`, `star`, `spider` with parameter `k`, or
/// `t_star` (ignores `k`).
///
/// # Safety
/// `name` is a nul-terminated string; `out_graph` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_named(
    name: *const c_char,
    k: usize,
    out_graph: *mut *mut CmGraph,
) -> CmStatus {
    guard(|| {
        let slot = out(out_graph)?;
        let g = make_named(text(name)?, k).map_err(with(CmStatus::Graph))?;
        *slot = Box::into_raw(Box::new(CmGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` is null or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_free(g: *mut CmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_graph_vertex_count(g: *const CmGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` is a live handle; `result` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_solve(
    g: *const CmGraph,
    channel: CmChannel,
    movement: CmMovement,
    result: *mut CmSolveResult,
) -> CmStatus {
    guard(|| {
        let g = handle(g)?;
        let slot = out(result)?;
        let r = solve(&g.0, rules(channel, movement), SolverLimits::default())
            .map_err(with(CmStatus::Solver))?;
        *slot = CmSolveResult {
            cat_wins: u8::from(r.cat_wins()),
            optimal_rounds: r.optimal_rounds().unwrap_or(0),
            states_explored: r.states_explored,
        };
        Ok(())
    })
}

/// Plays one game and hands back the finished game.
///
/// # Safety
/// `g` is a live handle; `out_game` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_simulate(
    g: *const CmGraph,
    channel: CmChannel,
    movement: CmMovement,
    cat: CmCat,
    mouse: CmMouse,
    seed: u64,
    max_rounds: usize,
    out_game: *mut *mut CmGame,
) -> CmStatus {
    guard(|| {
        let g = &handle(g)?.0;
        let slot = out(out_game)?;
        let rules = rules(channel, movement);
        let mut cat: Box<dyn CatStrategy> = match cat {
            CmCat::Forest => Box::new(forest_cat(g, rules).map_err(with(CmStatus::Strategy))?),
            CmCat::TstarScript => Box::new(tstar_weakened_cat(g, rules).map_err(with(CmStatus::Strategy))?),
            CmCat::SeagerDemo => Box::new(seager_demo_cat()),
            CmCat::Solver => Box::new(solver_cat(g, rules).map_err(with(CmStatus::Strategy))?),
        };
        let mut mouse: Box<dyn MouseAgent> = match mouse {
            CmMouse::PhantomGreedy => Box::new(phantom_adversary(g, rules, PhantomMode::Greedy)),
            CmMouse::PhantomExact => {
                let game = SolvedGame::new(g, rules, SolverLimits::default())
                    .map_err(with(CmStatus::Solver))?;
                Box::new(phantom_adversary(g, rules, PhantomMode::Exact(Arc::new(game))))
            }
            CmMouse::Cycle => match g.forest_check() {
                ForestCheck::Cycle(c) => Box::new(cycle_mouse(g, &c).map_err(with(CmStatus::Strategy))?),
                _ => return Err(Error(CmStatus::InvalidArgument, "graph has no cycle".into())),
            },
            CmMouse::Path => Box::new(path_mouse(g).map_err(with(CmStatus::Strategy))?),
            CmMouse::Random => Box::new(random_mouse(seed)),
        };
        let r = play_game(g, rules, &mut cat, &mut mouse, max_rounds)
            .map_err(with(CmStatus::Game))?;
        *slot = Box::into_raw(Box::new(CmGame(r)));
        Ok(())
    })
}

/// # Safety
/// `game` is null or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cm_game_free(game: *mut CmGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// # Safety
/// `game` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_game_outcome(game: *const CmGame) -> CmOutcome {
    match (*game).0.outcome {
        Outcome::CatWins => CmOutcome::CatWins,
        Outcome::MouseSurvivedHorizon => CmOutcome::MouseSurvivedHorizon,
        Outcome::MouseNoLegalMove => CmOutcome::MouseNoLegalMove,
    }
}

/// # Safety
/// `game` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_game_rounds(game: *const CmGame) -> usize {
    (*game).0.rounds_played
}

/// Trace text of the game; free with [`cm_string_free`].
///
/// # Safety
/// `game` is a live handle; `trace` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_game_trace(game: *const CmGame, trace: *mut *mut c_char) -> CmStatus {
    guard(|| {
        let game = handle(game)?;
        *out(trace)? = into_c_string(game.0.to_trace_text());
        Ok(())
    })
}

/// Runs a verification suite. `n_max` 0 picks the suite default. The report
/// text is stored in `report` (free with [`cm_string_free`]) whether or not
/// the suite passed.
///
/// # Safety
/// `suite` is a nul-terminated string; `report` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_verify(suite: *const c_char, n_max: usize, report: *mut *mut c_char) -> CmStatus {
    let mut failed = false;
    let status = guard(|| {
        let slot = out(report)?;
        let n = (n_max > 0).then_some(n_max);
        let r = run_suite(text(suite)?, n).map_err(with(CmStatus::InvalidArgument))?;
        failed = !r.passed();
        *slot = into_c_string(r.to_string());
        Ok(())
    });
    if status == CmStatus::Ok && failed {
        set_error("suite recorded failures".into());
        return CmStatus::SuiteFailed;
    }
    status
}
