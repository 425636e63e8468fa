/* The public header must compile as plain C. */
#include "gpegap/gpegap.h"

int gpegap_header_is_c(void);

int gpegap_header_is_c(void) {
  gpegap_solver_options opts;
  gpegap_solver_options_default(&opts);
  return opts.max_iter > 0 && gpegap_status_string(GPEGAP_OK) != NULL;
}
