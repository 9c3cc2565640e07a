#ifndef RBO_H
#define RBO_H

/* C interface to the RBO broadcast protocol library: bit-reversal schedule
 * math, the wire codec, the sender schedule, the receiver state machine and
 * the trial/experiment simulator. Handles are opaque; every fallible call
 * returns an rbo_status and writes results through out-parameters that are
 * left untouched on failure unless noted. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RBO_MAX_BIT_WIDTH 63u
#define RBO_HEADER_BYTES 27u
#define RBO_MAX_PAYLOAD 1024u

typedef enum rbo_status {
  RBO_OK = 0,
  RBO_ERR_ARGUMENT = 1,       /* null pointer or malformed argument */
  RBO_ERR_DOMAIN = 2,         /* value outside its documented range */
  RBO_ERR_TRUNCATED = 3,      /* buffer shorter than the encoded message */
  RBO_ERR_RANK_OVERFLOW = 4,  /* rank does not fit the sequence length */
  RBO_ERR_PAYLOAD_LENGTH = 5, /* payload over the cap or length mismatch */
  RBO_ERR_BAD_BIT_WIDTH = 6,  /* log sequence length outside [1, 63] */
  RBO_ERR_BUFFER_TOO_SMALL = 7,
  RBO_ERR_RUNTIME = 8, /* simulation failed to terminate cleanly */
  RBO_ERR_INTERNAL = 9,
} rbo_status;

const char* rbo_status_str(rbo_status status);
const char* rbo_version(void);

/* ---- bit-reversal permutation and tree geometry ---- */

rbo_status rbo_rev_bits(uint32_t k, uint64_t x, uint64_t* out);
rbo_status rbo_bs_order(uint32_t k, uint64_t x, uint64_t* out);
uint32_t rbo_level_of_slot(uint64_t t);
rbo_status rbo_level_of_rank(uint32_t k, uint64_t x, uint32_t* out);
rbo_status rbo_coordinate_in_level(uint32_t k, uint64_t x, uint64_t* out);
rbo_status rbo_min_rev_bits(uint32_t k, uint64_t r1, uint64_t r2, uint64_t* out);
rbo_status rbo_max_rev_bits(uint32_t k, uint64_t r1, uint64_t r2, uint64_t* out);

/* ---- next useful slot ---- */

typedef enum rbo_strategy {
  RBO_STRATEGY_AUTO = 0,
  RBO_STRATEGY_NAIVE = 1,
  RBO_STRATEGY_REVERSE = 2,
  RBO_STRATEGY_POLYLOG = 3,
} rbo_strategy;

/* Next slot after t whose rank lies in [r1, r2]; tau_out (nullable) receives
 * the cyclic distance from t, in [1, 2^k]. */
rbo_status rbo_next_slot(uint32_t k, uint64_t t, uint64_t r1, uint64_t r2,
                         rbo_strategy strategy, uint64_t* slot_out, uint64_t* tau_out);

/* ---- wire codec ---- */

typedef struct rbo_message {
  uint32_t sequence_id; /* 0 decodes fine but flags a bad message */
  uint8_t log_sequence_length;
  uint32_t time_slot_length_ms;
  uint64_t key;
  uint64_t rank;
  uint16_t payload_len;
  uint8_t payload[RBO_MAX_PAYLOAD];
} rbo_message;

/* Serializes into buf (capacity cap bytes); *written gets the full size. */
rbo_status rbo_message_encode(const rbo_message* m, uint8_t* buf, size_t cap,
                              size_t* written);
rbo_status rbo_message_decode(const uint8_t* data, size_t len, rbo_message* out);
int rbo_message_is_bad(const rbo_message* m);

/* ---- sender schedule ---- */

typedef struct rbo_schedule rbo_schedule;

typedef struct rbo_schedule_item {
  uint64_t key;
  const uint8_t* payload; /* may be NULL when payload_len is 0 */
  uint16_t payload_len;   /* at most RBO_MAX_PAYLOAD */
} rbo_schedule_item;

/* Sorts items by key, pads to a power of two with duplicates and takes
 * ownership of nothing: item payloads are copied. sequence_id must be
 * nonzero. */
rbo_status rbo_schedule_create(const rbo_schedule_item* items, size_t count,
                               uint32_t sequence_id, uint32_t slot_length_ms,
                               rbo_schedule** out);
void rbo_schedule_destroy(rbo_schedule* sched);
uint32_t rbo_schedule_log_length(const rbo_schedule* sched);
uint64_t rbo_schedule_length(const rbo_schedule* sched);
rbo_status rbo_schedule_entry_key(const rbo_schedule* sched, uint64_t rank,
                                  uint64_t* key_out);
/* Message transmitted at a global slot (wraps modulo the round length). */
rbo_status rbo_schedule_slot_message(const rbo_schedule* sched, uint64_t global_slot,
                                     rbo_message* out);

/* ---- receiver state machine ---- */

typedef struct rbo_protocol_config {
  uint64_t time_margin_ms;
  uint64_t relative_margin_divisor; /* power of two */
  uint64_t min_sleeping_time_ms;
  uint64_t timeout_ms; /* 0 disables the listening timeout */
} rbo_protocol_config;

/* Margin 5 ms, divisor 64, minimum sleep two slots, timeout eight slots. */
void rbo_protocol_config_defaults(uint32_t slot_length_ms, rbo_protocol_config* out);

typedef enum rbo_fsm_state {
  RBO_FSM_IDLE = 0,
  RBO_FSM_LISTENING = 1,
  RBO_FSM_SLEEPING = 2,
} rbo_fsm_state;

typedef enum rbo_radio_state {
  RBO_RADIO_OFF = 0,
  RBO_RADIO_TURNING_ON = 1,
  RBO_RADIO_ON = 2,
  RBO_RADIO_TURNING_OFF = 3,
} rbo_radio_state;

typedef enum rbo_timer_kind {
  RBO_TIMER_TIMEOUT = 0,
  RBO_TIMER_SLEEPING = 1,
} rbo_timer_kind;

typedef enum rbo_user_event {
  RBO_EVENT_SUCCESS = 0,
  RBO_EVENT_KEY_NOT_PRESENT = 1,
  RBO_EVENT_TIMEOUT = 2,
  RBO_EVENT_BAD_MESSAGE = 3,
  RBO_EVENT_FAILED_RADIO = 4,
} rbo_user_event;

typedef enum rbo_effect_kind {
  RBO_EFFECT_RADIO_ON = 0,     /* start switching on; call radio_switch_done */
  RBO_EFFECT_RADIO_OFF = 1,    /* start switching off; call radio_switch_done */
  RBO_EFFECT_ARM_TIMER = 2,    /* (re)arm timer for duration_ms */
  RBO_EFFECT_CANCEL_TIMER = 3, /* disarm timer */
  RBO_EFFECT_SIGNAL_USER = 4,  /* deliver event (and message if has_message) */
} rbo_effect_kind;

typedef struct rbo_effect {
  rbo_effect_kind kind;
  rbo_timer_kind timer;
  uint64_t duration_ms;
  rbo_user_event event;
  int has_message;
  rbo_message message;
} rbo_effect;

/* Upper bound on effects emitted by one input. */
#define RBO_MAX_EFFECTS 8u

typedef struct rbo_receiver rbo_receiver;

rbo_status rbo_receiver_create(const rbo_protocol_config* config, rbo_receiver** out);
void rbo_receiver_destroy(rbo_receiver* recv);

/* Each input returns the effects the environment must perform, written into
 * effects[0 .. *count - 1] (capacity cap; RBO_MAX_EFFECTS always suffices). */
rbo_status rbo_receiver_search(rbo_receiver* recv, uint64_t key, rbo_effect* effects,
                               size_t cap, size_t* count);
rbo_status rbo_receiver_stop(rbo_receiver* recv, rbo_effect* effects, size_t cap,
                             size_t* count);
rbo_status rbo_receiver_reset(rbo_receiver* recv, rbo_effect* effects, size_t cap,
                              size_t* count);
rbo_status rbo_receiver_received(rbo_receiver* recv, const rbo_message* m,
                                 uint64_t now_ms, rbo_effect* effects, size_t cap,
                                 size_t* count);
rbo_status rbo_receiver_timer_fired(rbo_receiver* recv, rbo_timer_kind which,
                                    rbo_effect* effects, size_t cap, size_t* count);
rbo_status rbo_receiver_radio_switch_done(rbo_receiver* recv, int ok,
                                          rbo_effect* effects, size_t cap,
                                          size_t* count);

rbo_fsm_state rbo_receiver_state(const rbo_receiver* recv);
rbo_radio_state rbo_receiver_radio(const rbo_receiver* recv);
uint32_t rbo_receiver_sequence_id(const rbo_receiver* recv);
uint32_t rbo_receiver_log_sequence_length(const rbo_receiver* recv);
uint64_t rbo_receiver_searched_key(const rbo_receiver* recv);
/* Candidate interval [*min_rank, *sup_rank), empty when min >= sup. */
void rbo_receiver_interval(const rbo_receiver* recv, uint64_t* min_rank,
                           uint64_t* sup_rank);
int rbo_receiver_timer_armed(const rbo_receiver* recv, rbo_timer_kind which);

/* ---- simulation ---- */

typedef enum rbo_trial_mode {
  RBO_MODE_BARE = 0,
  RBO_MODE_FULL_FSM = 1,
} rbo_trial_mode;

typedef enum rbo_retry_policy {
  RBO_RETRY_NEXT_IN_INTERVAL = 0,
  RBO_RETRY_IMMEDIATE_NEXT = 1,
} rbo_retry_policy;

typedef enum rbo_trial_outcome {
  RBO_OUTCOME_FOUND = 0,
  RBO_OUTCOME_ABSENT = 1,
  RBO_OUTCOME_TIMEOUT = 2,
} rbo_trial_outcome;

typedef struct rbo_trial_config {
  uint32_t k;
  uint64_t seed;
  double p_success;
  rbo_trial_mode mode;
  rbo_retry_policy retry;
  int has_gap_rank; /* when 0, gap_rank is drawn from the seed */
  uint64_t gap_rank;
  int has_start_slot; /* when 0, start_slot is drawn from the seed */
  uint64_t start_slot;
  uint32_t slot_length_ms;
  uint32_t radio_switch_latency_ms;
  double clock_skew;
  const rbo_protocol_config* protocol; /* NULL for defaults */
} rbo_trial_config;

void rbo_trial_config_init(rbo_trial_config* cfg);

typedef struct rbo_trial_metrics {
  uint64_t receptions;
  uint64_t elapsed_slots;
  uint64_t radio_on_ms;
  rbo_trial_outcome outcome;
} rbo_trial_metrics;

rbo_status rbo_run_trial(const rbo_trial_config* cfg, rbo_trial_metrics* out);

typedef struct rbo_experiment_config {
  uint32_t k_min;
  uint32_t k_max;
  const double* p_values;
  size_t p_count;
  uint64_t trials;
  uint64_t master_seed;
  rbo_trial_mode mode;
  rbo_retry_policy retry;
  uint32_t threads; /* 0 means hardware concurrency */
  uint32_t slot_length_ms;
  uint32_t radio_switch_latency_ms;
  double clock_skew;
} rbo_experiment_config;

void rbo_experiment_config_init(rbo_experiment_config* cfg);

typedef struct rbo_experiment_row {
  uint32_t k;
  double p;
  uint64_t trials;
  double mean_energy;
  double std_energy;
  double mean_slots;
  double std_slots;
  uint64_t seed;
} rbo_experiment_row;

/* Rows ordered by ascending k then ascending p; the caller provides space
 * for (k_max - k_min + 1) * p_count rows. */
rbo_status rbo_run_experiment(const rbo_experiment_config* cfg, rbo_experiment_row* rows,
                              size_t cap, size_t* count);

/* Renders rows as CSV (header "k,p,trials,mean_energy,std_energy,mean_slots,
 * seed"). buf receives a NUL-terminated string; *len its length. */
rbo_status rbo_experiment_csv(const rbo_experiment_row* rows, size_t count, char* buf,
                              size_t cap, size_t* len);

/* ---- self-verification ---- */

typedef struct rbo_verify_options {
  uint32_t max_k;   /* verification depth; bounds exhaustive and random sweeps */
  uint64_t samples; /* randomized cases per suite; 0 for exhaustive only */
  uint64_t seed;
  int inject_fault; /* run against a deliberately broken bit reversal */
} rbo_verify_options;

void rbo_verify_options_init(rbo_verify_options* opts);

typedef struct rbo_verify_result {
  char name[48];
  int passed;
  uint64_t cases;
  char detail[144];
} rbo_verify_result;

#define RBO_VERIFY_SUITES 6u

rbo_status rbo_verify_run(const rbo_verify_options* opts, rbo_verify_result* results,
                          size_t cap, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* RBO_H */
