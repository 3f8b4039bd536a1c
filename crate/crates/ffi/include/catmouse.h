#ifndef CATMOUSE_H
#define CATMOUSE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CmCat {
  /**
   * Tree strategy, component by component.
   */
  CM_CAT_FOREST = 0,
  CM_CAT_TSTAR_SCRIPT = 1,
  CM_CAT_SEAGER_DEMO = 2,
  CM_CAT_SOLVER = 3,
} CmCat;

typedef enum CmChannel {
  CM_CHANNEL_BINARY = 0,
  CM_CHANNEL_COARSE = 1,
  CM_CHANNEL_COARSE_CMP = 2,
  CM_CHANNEL_CMP_ONLY = 3,
  CM_CHANNEL_EXACT = 4,
} CmChannel;

typedef enum CmMouse {
  CM_MOUSE_PHANTOM_GREEDY = 0,
  CM_MOUSE_PHANTOM_EXACT = 1,
  CM_MOUSE_CYCLE = 2,
  CM_MOUSE_PATH = 3,
  /**
   * Seeded by the `seed` argument.
   */
  CM_MOUSE_RANDOM = 4,
} CmMouse;

typedef enum CmMovement {
  CM_MOVEMENT_MUST_MOVE = 0,
  CM_MOVEMENT_MAY_STAY_AVOID_CAT = 1,
  CM_MOVEMENT_MUST_MOVE_AVOID_CAT = 2,
  CM_MOVEMENT_MAY_STAY = 3,
} CmMovement;

typedef enum CmOutcome {
  CM_OUTCOME_CAT_WINS = 0,
  CM_OUTCOME_MOUSE_SURVIVED_HORIZON = 1,
  CM_OUTCOME_MOUSE_NO_LEGAL_MOVE = 2,
} CmOutcome;

typedef enum CmStatus {
  CM_STATUS_OK = 0,
  CM_STATUS_NULL_POINTER = 1,
  CM_STATUS_INVALID_UTF8 = 2,
  CM_STATUS_INVALID_ARGUMENT = 3,
  CM_STATUS_GRAPH = 4,
  CM_STATUS_STRATEGY = 5,
  CM_STATUS_SOLVER = 6,
  CM_STATUS_GAME = 7,
  /**
   * The suite ran and recorded at least one failure.
   */
  CM_STATUS_SUITE_FAILED = 8,
  CM_STATUS_PANIC = 9,
} CmStatus;

/**
 * Opaque handle to a finished game.
 */
typedef struct CmGame CmGame;

/**
 * Opaque graph handle.
 */
typedef struct CmGraph CmGraph;

typedef struct CmSolveResult {
  /**
   * 1 if the cat has a winning strategy, else 0.
   */
  uint8_t cat_wins;
  /**
   * Optimal capture round; 0 when the mouse wins.
   */
  uint32_t optimal_rounds;
  size_t states_explored;
} CmSolveResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread; do not free.
 */
const char *cm_last_error(void);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void cm_string_free(char *s);

/**
 * Parses the `n m` / `u v` edge-list format.
 *
 * # Safety
 * `source` is a nul-terminated string; `out_graph` is a valid pointer.
 */
enum CmStatus cm_graph_parse(const char *source, struct CmGraph **out_graph);

/**
 * Named shape: `path`, `cycle`, `star`, `spider` with parameter `k`, or
 * `t_star` (ignores `k`).
 *
 * # Safety
 * `name` is a nul-terminated string; `out_graph` is a valid pointer.
 */
enum CmStatus cm_graph_named(const char *name, size_t k, struct CmGraph **out_graph);

/**
 * # Safety
 * `g` is null or a handle from this library and not yet freed.
 */
void cm_graph_free(struct CmGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` is null or a live handle.
 */
size_t cm_graph_vertex_count(const struct CmGraph *g);

/**
 * # Safety
 * `g` is a live handle; `result` is a valid pointer.
 */
enum CmStatus cm_solve(const struct CmGraph *g,
                       enum CmChannel channel,
                       enum CmMovement movement,
                       struct CmSolveResult *result);

/**
 * Plays one game and hands back the finished game.
 *
 * # Safety
 * `g` is a live handle; `out_game` is a valid pointer.
 */
enum CmStatus cm_simulate(const struct CmGraph *g,
                          enum CmChannel channel,
                          enum CmMovement movement,
                          enum CmCat cat,
                          enum CmMouse mouse,
                          uint64_t seed,
                          size_t max_rounds,
                          struct CmGame **out_game);

/**
 * # Safety
 * `game` is null or a handle from this library and not yet freed.
 */
void cm_game_free(struct CmGame *game);

/**
 * # Safety
 * `game` is a live handle.
 */
enum CmOutcome cm_game_outcome(const struct CmGame *game);

/**
 * # Safety
 * `game` is a live handle.
 */
size_t cm_game_rounds(const struct CmGame *game);

/**
 * Trace text of the game; free with [`cm_string_free`].
 *
 * # Safety
 * `game` is a live handle; `trace` is a valid pointer.
 */
enum CmStatus cm_game_trace(const struct CmGame *game, char **trace);

/**
 * Runs a verification suite. `n_max` 0 picks the suite default. The report
 * text is stored in `report` (free with [`cm_string_free`]) whether or not
 * the suite passed.
 *
 * # Safety
 * `suite` is a nul-terminated string; `report` is a valid pointer.
 */
enum CmStatus cm_verify(const char *suite, size_t n_max, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATMOUSE_H */
