#include <stdio.h>
#include <string.h>

#include "eorder.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, \
              #cond);                                                 \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  const uint64_t fv[] = {1, 3, 2};
  const uint64_t gv[] = {1, 2, 3};
  EoPrefix *f = NULL, *g = NULL;
  CHECK(eo_prefix_new(fv, 3, &f) == EO_STATUS_OK);
  CHECK(eo_prefix_new(gv, 3, &g) == EO_STATUS_OK);

  bool holds = true;
  size_t i = 0, j = 0;
  CHECK(eo_leq(f, g, &holds, &i, &j) == EO_STATUS_OK);
  CHECK(!holds && i == 2 && j == 3);

  size_t ranks[3];
  CHECK(eo_standardize(f, ranks, 3) == EO_STATUS_OK);
  CHECK(ranks[0] == 1 && ranks[1] == 3 && ranks[2] == 2);

  const uint64_t dup[] = {4, 4};
  EoPrefix *bad = NULL;
  CHECK(eo_prefix_new(dup, 2, &bad) == EO_STATUS_INVALID_INPUT);
  CHECK(bad == NULL && strstr(eo_last_error(), "more than once") != NULL);

  EoEnumerator *e = NULL;
  EoPrefix *k = NULL;
  CHECK(eo_enumerator_parse("halt:collatz", &e) == EO_STATUS_OK);
  CHECK(eo_enumerator_take(e, 5, 10000, &k) == EO_STATUS_OK);
  CHECK(eo_prefix_len(k) == 5 && eo_prefix_values(k)[3] == 3);

  EoPaired *p = NULL;
  CHECK(eo_paired_parse("1 4 2 6\n2 6 4 8\nm=1\n", &p) == EO_STATUS_OK);
  EoMembership m;
  CHECK(eo_decide(p, 5, &m) == EO_STATUS_OK && m == EO_MEMBERSHIP_OUT);
  CHECK(eo_decide(p, 100, &m) == EO_STATUS_OK && m == EO_MEMBERSHIP_INSUFFICIENT);

  eo_paired_free(p);
  eo_prefix_free(k);
  eo_enumerator_free(e);
  eo_prefix_free(f);
  eo_prefix_free(g);
  puts("ok");
  return 0;
}
