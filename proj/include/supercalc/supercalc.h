#ifndef SUPERCALC_H
#define SUPERCALC_H

#include <stddef.h>

#if defined(SUPERCALC_BUILDING)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handles */
typedef struct sc_problem sc_problem;
typedef struct sc_report sc_report;

/* Error codes; SC_VIOLATED is a report whose checked property failed. */
typedef enum {
  SC_OK = 0,
  SC_ERROR_INPUT = 1,
  SC_VIOLATED = 2,
  SC_ERROR_INVALID_ARGUMENT = -1,
  SC_ERROR_INTERNAL = -99
} sc_status;

/* Message of the last failed call on this thread; never NULL. */
SC_API const char* sc_last_error(void);

/* Parses problem text or a file into a handle. */
SC_API int sc_problem_parse(const char* text, sc_problem** out);
SC_API int sc_problem_load(const char* path, sc_problem** out);
SC_API void sc_problem_free(sc_problem* problem);

/* Canonical form of an expression on the problem's chart. The string is
 * owned by the caller and released with sc_string_free. */
SC_API int sc_expression_normalize(const sc_problem* problem, const char* text, char** out);
SC_API void sc_string_free(char* s);

/* Runs a subcommand. problem may be NULL for commands that need no file.
 * option_keys/option_values are parallel arrays of n_options entries.
 * Returns SC_OK, SC_VIOLATED (report still produced) or an error code. */
SC_API int sc_run(const char* command, const sc_problem* problem, const char* source, const char* const* args, size_t n_args,
                  const char* const* option_keys, const char* const* option_values, size_t n_options, int pretty,
                  sc_report** out);
/* JSON text of the report, valid until sc_report_free. */
SC_API const char* sc_report_json(const sc_report* report);
SC_API void sc_report_free(sc_report* report);

/* Subcommand names as a NULL-terminated array. */
SC_API const char* const* sc_command_names(void);

SC_API const char* sc_version(void);

#ifdef __cplusplus
}
#endif

#endif
