#ifndef YUPANA_YUPANA_H
#define YUPANA_YUPANA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define YUP_API __declspec(dllexport)
#else
#define YUP_API __attribute__((visibility("default")))
#endif

/*
 * Every call returns a status. On failure the message is available from
 * yup_last_error() on the same thread until the next failing call.
 *
 * Integers cross the boundary as decimal strings. Strings handed out through
 * char** parameters belong to the caller and are released with
 * yup_string_free(); handles are released with their *_free function.
 */
typedef enum yup_status {
  YUP_OK = 0,
  YUP_ERR_DOMAIN = 1,
  YUP_ERR_OVERFLOW = 2,
  YUP_ERR_NOT_SIMPLE = 3,
  YUP_ERR_STALE_MATCH = 4,
  YUP_ERR_CONFLICT = 5,
  YUP_ERR_CYCLE = 6,
  YUP_ERR_NO_MATCH = 7,
  YUP_ERR_NOT_FOUND = 8,
  YUP_ERR_PARSE = 9,
  YUP_ERR_IO = 10,
  YUP_ERR_INVALID_ARGUMENT = 11,
  YUP_ERR_INTERNAL = 12
} yup_status;

typedef enum yup_sign { YUP_POSITIVE = 0, YUP_NEGATIVE = 1 } yup_sign;

typedef struct yup_board yup_board;
typedef struct yup_result yup_result;
typedef struct yup_store yup_store;
typedef struct yup_server yup_server;

YUP_API const char* yup_version(void);
YUP_API const char* yup_status_name(yup_status status);
YUP_API const char* yup_last_error(void);
YUP_API void yup_string_free(char* s);

/* Boards. Squares are addressed by weight (5, 3, 2, 1) and row (0 = units). */
YUP_API yup_status yup_board_new(int rows, yup_board** out);
YUP_API yup_status yup_board_encode(const char* value, yup_sign sign, int rows, yup_board** out);
YUP_API yup_status yup_board_from_snapshot(const char* snapshot, yup_board** out);
YUP_API yup_status yup_board_clone(const yup_board* board, yup_board** out);
YUP_API void yup_board_free(yup_board* board);

YUP_API yup_status yup_board_rows(const yup_board* board, int* out);
YUP_API yup_status yup_board_add_tokens(yup_board* board, int weight, int row, yup_sign sign, uint64_t n);
YUP_API yup_status yup_board_remove_tokens(yup_board* board, int weight, int row, yup_sign sign, uint64_t n);
/* Superimposes the encoding of value; YUP_ERR_OVERFLOW past capacity. */
YUP_API yup_status yup_board_load(yup_board* board, const char* value, yup_sign sign);
YUP_API yup_status yup_board_count(const yup_board* board, int weight, int row, yup_sign sign, uint64_t* out);
YUP_API yup_status yup_board_value(const yup_board* board, char** out);
YUP_API yup_status yup_board_is_simple(const yup_board* board, int* out);
/* YUP_ERR_NOT_SIMPLE unless the board is simple. */
YUP_API yup_status yup_board_decode(const yup_board* board, char** out);
YUP_API yup_status yup_board_snapshot(const yup_board* board, char** out);
YUP_API yup_status yup_board_json(const yup_board* board, char** out);

/* JSON array of matches in listing order; rules is a comma-separated list of
 * rule ids or NULL for the whole catalog. */
YUP_API yup_status yup_board_matches(const yup_board* board, const char* rules, char** out);
/* Applies {"rule","sign","anchor":{"weight","row"},"k","n"} in place. */
YUP_API yup_status yup_board_apply(yup_board* board, const char* move_json);
/* strategy_json: NULL, or {"strategy":"canonical"|"random","seed","allow_expansions"}.
 * trace_out (optional) receives the trace in export format. */
YUP_API yup_status yup_board_simplify(const yup_board* board, const char* strategy_json, yup_board** out, char** trace_out);
YUP_API yup_status yup_board_pair_and_cancel(const yup_board* board, yup_board** out, char** trace_out);
/* options_json: NULL, or {"rules":"non-expansion"|"all"|[ids],"max_states","max_depth"}.
 * The report is a JSON object. */
YUP_API yup_status yup_board_explore(const yup_board* board, const char* options_json, char** report_out);

/* The four procedures. rows <= 0 means the default board of 5 rows. */
YUP_API yup_status yup_add(const char* const* addends, size_t count, int rows, yup_result** out);
YUP_API yup_status yup_sub(const char* minuend, const char* const* subtrahends, size_t count, int rows, yup_result** out);
YUP_API yup_status yup_mul(const char* multiplicand, const char* multiplier, int rows, yup_result** out);
YUP_API yup_status yup_div(const char* dividend, const char* divisor, int rows, yup_result** out);
YUP_API void yup_result_free(yup_result* result);

/* Decoded terminal board (the remainder for division). */
YUP_API yup_status yup_result_value(const yup_result* result, char** out);
/* YUP_ERR_DOMAIN for results other than division. */
YUP_API yup_status yup_result_quotient(const yup_result* result, char** out);
YUP_API yup_status yup_result_remainder(const yup_result* result, char** out);
/* One "k=<k> subtractions=<count>" line per displacement, in order. */
YUP_API yup_status yup_result_division_steps(const yup_result* result, char** out);
YUP_API yup_status yup_result_board(const yup_result* result, yup_board** out);
/* One "step=.. rule_id=.. anchor_row=.. k=.. n=.. value_before=.. value_after=.." line per move. */
YUP_API yup_status yup_result_trace(const yup_result* result, char** out);
YUP_API yup_status yup_result_json(const yup_result* result, char** out);

/* Rule catalog as JSON. */
YUP_API yup_status yup_catalog_json(char** out);

/* Property suites. options_json may be NULL; keys: seed, samples,
 * trials_per_rule, rows, add_max, mul_a_max, mul_b_max, div_a_max, div_b_max,
 * confluence_n_max, decompositions, max_summands, properties (list of ids).
 * The report has one JSON record per line; *passed is 1 when all pass. */
YUP_API yup_status yup_verify(const char* options_json, char** report_out, int* passed);

/* Sessions. log_dir may be NULL for an in-memory store. */
YUP_API yup_status yup_store_new(const char* log_dir, yup_store** out);
YUP_API void yup_store_free(yup_store* store);
/* Reloads every session log of the directory; *count receives how many. */
YUP_API yup_status yup_store_restore(yup_store* store, size_t* count);

/* Routes a request exactly as the HTTP service would. query may be NULL
 * ("a=b&c=d"); *http_status receives the HTTP status of the response. */
YUP_API yup_status yup_store_request(yup_store* store, const char* method, const char* path, const char* query,
                                     const char* body, int* http_status, char** response);

/* Typed shortcuts for the same routes; responses are JSON. */
YUP_API yup_status yup_session_create(yup_store* store, const char* request_json, char** out);
YUP_API yup_status yup_session_get(yup_store* store, const char* id, char** out);
YUP_API yup_status yup_session_load(yup_store* store, const char* id, const char* value, yup_sign sign, char** out);
YUP_API yup_status yup_session_matches(yup_store* store, const char* id, const char* rules, char** out);
YUP_API yup_status yup_session_apply(yup_store* store, const char* id, const char* match_id, char** out);
YUP_API yup_status yup_session_apply_move(yup_store* store, const char* id, const char* move_json, char** out);
YUP_API yup_status yup_session_auto(yup_store* store, const char* id, const char* request_json, char** out);
YUP_API yup_status yup_session_hint(yup_store* store, const char* id, char** out);
/* Export format text. */
YUP_API yup_status yup_session_trace(yup_store* store, const char* id, char** out);
/* The session's event log, one JSON record per line. */
YUP_API yup_status yup_session_events(yup_store* store, const char* id, char** out);

/* Replays an event log; *snapshot_out receives the final board snapshot. */
YUP_API yup_status yup_replay(const char* events_jsonl, char** snapshot_out);

/* HTTP service on a background thread; port 0 picks a free port. */
YUP_API yup_status yup_server_start(yup_store* store, const char* host, int port, yup_server** out);
YUP_API yup_status yup_server_port(const yup_server* server, int* out);
/* Stops serving and frees the handle. */
YUP_API void yup_server_stop(yup_server* server);

#ifdef __cplusplus
}
#endif

#endif
