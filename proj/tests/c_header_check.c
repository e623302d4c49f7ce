/* Compiles the public header as C and runs a short round trip through it. */
#include <math.h>
#include <stdio.h>

#include "resolvent_atlas.h"

int main(void) {
  ra_spectrum* s = NULL;
  ra_bound_query q = {{1.0, 0.0}, 1.0, 0, 0.0};
  double v = 0.0;
  if (ra_spectrum_parse("0", &s) != RA_OK) return 1;
  if (ra_contraction_bound_optimal(s, &q, &v) != RA_OK || fabs(v - 1.0) > 1e-14) return 2;
  ra_spectrum_destroy(s);
  if (ra_spectrum_parse("2", &s) != RA_ERR_INVALID_ARGUMENT) return 3;
  printf("%s\n", ra_last_error());
  return 0;
}
