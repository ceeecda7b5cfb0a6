#ifndef CERTKIT_H
#define CERTKIT_H

/* Public C interface of the certification toolkit.
 *
 * Every operation produces a report handle carrying a verdict, the echoed
 * inputs, and a certificate; reports render to text or json.  Functions
 * return CK_OK when a report was produced (even for negative verdicts such
 * as "not-dense" or "exhausted"); nonzero status means no report exists and
 * ck_last_error() describes the problem.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ck_report ck_report;

typedef enum {
    CK_OK = 0,
    CK_ERR_INVALID = 1, /* bad arguments / domain preconditions violated */
    CK_ERR_RUNTIME = 2  /* internal failure or resource cap exceeded */
} ck_status;

/* sigma: "none", "all", or a comma list of real places from {1,2} */
ck_status ck_g_invariant(long d, long p, const char* sigma, ck_report** out);

/* primes_csv: comma-separated rational primes forming S (may be empty) */
ck_status ck_density_check(long d, long p, const char* primes_csv, const char* sigma,
                           ck_report** out);

ck_status ck_witness(long d, long p, const char* sigma, long bound,
                     const char* exclude_csv, ck_report** out);

/* real_center != 0 selects the sqrt(p^a) class and ignores t */
ck_status ck_weil(long t, long p, long a, int real_center, ck_report** out);

ck_status ck_isogclass(long p, long n, ck_report** out);

/* l <= 0 lets the toolkit pick the smallest usable l */
ck_status ck_modular1(long p, long n, long l, long m_max, ck_report** out);

/* l > 0 tests that candidate; l <= 0 searches for the smallest one */
ck_status ck_topgen(long p, long l, const char* exclude_csv, ck_report** out);

ck_status ck_torus_search(long d, long p, long bound, ck_report** out);

ck_status ck_unitary_index(long d, long p, long l, long m, ck_report** out);

ck_status ck_fiber(long d, long p, ck_report** out);

ck_status ck_quaternion_verify(long p, long l, long m, long k_max, ck_report** out);

/* verdict string owned by the report */
const char* ck_report_verdict(const ck_report* r);

/* process exit code implied by the verdict: 0, 1, or 2 */
int ck_report_exit_code(const ck_report* r);

/* format: "text" or "json"; free the result with ck_string_free */
char* ck_report_render(const ck_report* r, const char* format);

void ck_string_free(char* s);
void ck_report_free(ck_report* r);

/* message of the most recent failure in this thread; empty if none */
const char* ck_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
