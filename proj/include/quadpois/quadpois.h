#ifndef QUADPOIS_H
#define QUADPOIS_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QUADPOIS_BUILDING)
#define QP_API __attribute__((visibility("default")))
#else
#define QP_API
#endif

/* Every call returns a status. On QP_OK and QP_NEGATIVE an output handle is
   produced; on any other status outputs are set to NULL and qp_last_error()
   describes the failure (thread-local, valid until the next call). */
typedef enum qp_status {
  QP_OK = 0,
  QP_NEGATIVE = 1,         /* computation succeeded, verdict is negative */
  QP_PARSE_ERROR = 2,      /* malformed fixture, script, number or polynomial */
  QP_PRECONDITION = 3,     /* input outside the operation's domain */
  QP_INTERNAL = 4,         /* failed self-consistency check */
  QP_INVALID_ARGUMENT = 5  /* null or incompatible arguments */
} qp_status;

typedef struct qp_algebra qp_algebra;
typedef struct qp_bivector qp_bivector;
typedef struct qp_rmatrix qp_rmatrix;
typedef struct qp_report qp_report;

QP_API const char* qp_version(void);
QP_API const char* qp_status_name(qp_status status);
QP_API const char* qp_last_error(void);

/* Lie algebras: gl(n) or the ".lie" fixture grammar. */
QP_API qp_status qp_algebra_gl(int n, qp_algebra** out);
QP_API qp_status qp_algebra_parse(const char* text, qp_algebra** out);
QP_API qp_status qp_algebra_load(const char* path, qp_algebra** out);
QP_API int qp_algebra_dim(const qp_algebra* algebra);
/* Canonical fixture text, owned by the handle. */
QP_API const char* qp_algebra_text(const qp_algebra* algebra);
QP_API void qp_algebra_free(qp_algebra* algebra);

/* Bivector fields: the ".biv" fixture grammar. */
QP_API qp_status qp_bivector_parse(const char* text, qp_bivector** out);
QP_API qp_status qp_bivector_load(const char* path, qp_bivector** out);
QP_API int qp_bivector_dim(const qp_bivector* bivector);
QP_API const char* qp_bivector_text(const qp_bivector* bivector);
QP_API void qp_bivector_free(qp_bivector* bivector);

/* r-matrices: the ".rmat" fixture grammar. Relative algebra paths are
   resolved against base_dir (NULL means "."); load uses the file's folder. */
QP_API qp_status qp_rmatrix_parse(const char* text, const char* base_dir, qp_rmatrix** out);
QP_API qp_status qp_rmatrix_load(const char* path, qp_rmatrix** out);
QP_API const char* qp_rmatrix_text(const qp_rmatrix* rmatrix);
QP_API void qp_rmatrix_free(qp_rmatrix* rmatrix);

/* Reports: canonical text and JSON carrying the same data. */
QP_API int qp_report_positive(const qp_report* report);
QP_API const char* qp_report_text(const qp_report* report);
QP_API const char* qp_report_json(const qp_report* report);
QP_API void qp_report_free(qp_report* report);

/* Analyses. Each returns QP_OK or QP_NEGATIVE with a report. */
QP_API qp_status qp_jacobi(const qp_bivector* bivector, qp_report** out);
QP_API qp_status qp_curl(const qp_bivector* bivector, qp_report** out);
QP_API qp_status qp_cartan(const qp_bivector* bivector, qp_report** out);
QP_API qp_status qp_dims(int n, int k, qp_report** out);
QP_API qp_status qp_j2(const qp_rmatrix* rmatrix, qp_report** out);
QP_API qp_status qp_cybe(const qp_rmatrix* rmatrix, qp_report** out);
/* rmatrix may be NULL for the symbolic r-matrix over gl(n). */
QP_API qp_status qp_equations(int n, const qp_rmatrix* rmatrix, qp_report** out);
/* omega: rows separated by ';', rational entries by spaces. */
QP_API qp_status qp_central_ext(const qp_algebra* algebra, const char* omega, qp_report** out);

/* Star products. method is "gutt" (algebra), "restricted" (algebra and
   omega), "cartan" (Cartan-type bivector) or "first-order" (r-matrix over
   gl(n), order 1). Unused inputs may be NULL. */
typedef struct qp_star_options {
  const char* method;
  const qp_algebra* algebra;
  const qp_bivector* bivector;
  const qp_rmatrix* rmatrix;
  const char* omega;
  int order;
} qp_star_options;

QP_API qp_status qp_star(const qp_star_options* options, const char* u, const char* v, qp_report** out);
QP_API qp_status qp_star_check(const qp_star_options* options, int degree_bound, qp_report** out);

/* Counterexample certificate. alpha is a rational or NULL (symbolic);
   script is the step text or NULL (built-in); with_log adds the replay log. */
QP_API qp_status qp_certify_counterexample(const char* alpha, const char* script, int with_log, qp_report** out);
QP_API qp_status qp_solve_dim2(const char* a, const char* b, const char* c, qp_report** out);

#ifdef __cplusplus
}
#endif

#endif
