#include <stdio.h>
#include <string.h>

#include "catmouse.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      const char *e = cm_last_error();                               \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
              e ? e : "no error");                                   \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  CmGraph *g = NULL;
  CHECK(cm_graph_named("path", 5, &g) == CM_STATUS_OK);
  CHECK(cm_graph_vertex_count(g) == 5);

  CmSolveResult r;
  CHECK(cm_solve(g, CM_CHANNEL_EXACT, CM_MOVEMENT_MUST_MOVE, &r) == CM_STATUS_OK);
  CHECK(r.cat_wins == 1);

  CmGame *game = NULL;
  CHECK(cm_simulate(g, CM_CHANNEL_EXACT, CM_MOVEMENT_MUST_MOVE, CM_CAT_SOLVER,
                    CM_MOUSE_PHANTOM_EXACT, 0, 100, &game) == CM_STATUS_OK);
  CHECK(cm_game_outcome(game) == CM_OUTCOME_CAT_WINS);
  CHECK(cm_game_rounds(game) == r.optimal_rounds);

  char *trace = NULL;
  CHECK(cm_game_trace(game, &trace) == CM_STATUS_OK);
  CHECK(strstr(trace, "class=0") != NULL);
  cm_string_free(trace);
  cm_game_free(game);

  CHECK(cm_graph_named("hexagon", 6, &g) == CM_STATUS_GRAPH);
  CHECK(cm_last_error() != NULL);
  cm_graph_free(g);

  printf("rounds=%u\n", r.optimal_rounds);
  return 0;
}
