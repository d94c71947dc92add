/* Exercises the C interface from C. */
#include "snls/snls.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                     \
  do {                                                                   \
    if (!(cond)) {                                                       \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                        \
    }                                                                    \
  } while (0)

static void test_config(void) {
  snls_config* cfg = NULL;
  EXPECT(snls_config_parse("K=4\nsteps=5\n", &cfg) == SNLS_OK);
  EXPECT(snls_config_set(cfg, "bogus", "1") == SNLS_ERR_CONFIG);
  EXPECT(strstr(snls_last_error(), "bogus") != NULL);
  EXPECT(snls_config_set(cfg, "dt", "0.01") == SNLS_OK);
  EXPECT(strcmp(snls_last_error(), "") == 0);

  snls_conservation_summary s;
  EXPECT(snls_run_conservation(cfg, NULL, &s) == SNLS_ERR_CONFIG); /* no seed */
  EXPECT(snls_config_set_seed(cfg, 3) == SNLS_OK);
  EXPECT(snls_run_conservation(cfg, NULL, &s) == SNLS_OK);
  EXPECT(s.completed == 1);
  EXPECT(s.rows == 6);
  EXPECT(s.max_mass_drift < 1e-12);
  snls_config_free(cfg);

  EXPECT(snls_config_load("/nonexistent.cfg", &cfg) == SNLS_ERR_CONFIG);
  EXPECT(snls_config_new(NULL) == SNLS_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(snls_status_name(SNLS_ERR_STEP_REJECTED), "step-rejected") == 0);
}

static void test_field_and_step(void) {
  double c[10] = {0};
  c[4] = 0.5;           /* k = 0 */
  c[6] = 0.4;           /* k = 1 */
  c[3] = 0.3;           /* Im, k = -1 */
  snls_field* f = NULL;
  EXPECT(snls_field_new(2, c, &f) == SNLS_OK);
  EXPECT(snls_field_mode_cutoff(f) == 2);
  double m = 0;
  EXPECT(snls_field_mass(f, &m) == SNLS_OK);
  EXPECT(fabs(m - 0.5) < 1e-15);
  EXPECT(snls_field_new(0, NULL, NULL) == SNLS_ERR_INVALID_ARGUMENT);
  snls_field* bad = NULL;
  EXPECT(snls_field_new(0, NULL, &bad) == SNLS_ERR_INVALID_ARGUMENT);

  snls_path* p = NULL;
  EXPECT(snls_path_sample(9, 0.1, 4, 2, &p) == SNLS_OK);
  EXPECT(snls_path_endpoint(p, 1) == snls_path_endpoint(p, -1));

  snls_step_params sp = snls_step_params_default();
  snls_field* g = NULL;
  int iters = 0;
  double res = 1;
  EXPECT(snls_midpoint_step(f, &sp, p, 0.0, 0.1, &g, &iters, &res) == SNLS_OK);
  EXPECT(iters > 0 && res <= sp.tol);
  double m2 = 0;
  snls_field_mass(g, &m2);
  EXPECT(fabs(m2 - m) < 1e-13);
  EXPECT(snls_midpoint_step(f, &sp, p, 0.0, 0.03, &g, NULL, NULL) == SNLS_ERR_INVALID_ARGUMENT);

  double buf[10];
  EXPECT(snls_field_get(g, buf, 4) == SNLS_ERR_INVALID_ARGUMENT);
  EXPECT(snls_field_get(g, buf, 10) == SNLS_OK);

  EXPECT(snls_field_load("/nonexistent.csv", &bad) == SNLS_ERR_IO);
  snls_field_free(g);
  snls_field_free(f);
  snls_path_free(p);
}

int main(void) {
  EXPECT(snls_version() != NULL);
  test_config();
  test_field_and_step();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
