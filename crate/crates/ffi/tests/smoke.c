#include <stdio.h>
#include <string.h>
#include "silence.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  const uint64_t lengths[] = {1, 2, 2, 5};
  SilenceIntervals *set = NULL;
  SilenceDistribution *dist = NULL;
  double p = 0.0;

  CHECK(silence_intervals_from_lengths(lengths, 4, &set) == SILENCE_STATUS_OK);
  CHECK(silence_distribution_build(set, &dist) == SILENCE_STATUS_OK);
  CHECK(silence_distribution_total(dist) == 4);
  CHECK(silence_distribution_longest(dist) == 5);
  CHECK(silence_probability(dist, 2, &p) == SILENCE_STATUS_OK);
  CHECK(p == 2.0 / 9.0);
  CHECK(silence_probability(dist, 9, &p) == SILENCE_STATUS_OUT_OF_DOMAIN);
  CHECK(strlen(silence_last_error_message()) > 0);

  silence_distribution_free(dist);
  silence_intervals_free(set);
  printf("ok\n");
  return 0;
}
