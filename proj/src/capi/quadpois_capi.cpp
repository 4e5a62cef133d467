#include "quadpois/quadpois.h"

#include "capi/reports.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "polyfields/analysis.hpp"

#include <filesystem>
#include <string>

using namespace quadpois;

struct qp_algebra {
  lie::LieAlgebraPtr value;
  std::string text;
};

struct qp_bivector {
  fields::PolyVectorField value;
  std::string text;
};

struct qp_rmatrix {
  lie::RMatrix value;
  std::string text;
};

struct qp_report {
  capi::Report value;
  std::string json;
};

namespace {

thread_local std::string last_error;

template <class F>
qp_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const ParseError& e) {
    last_error = e.what();
    return QP_PARSE_ERROR;
  } catch (const PreconditionError& e) {
    last_error = e.what();
    return QP_PRECONDITION;
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return QP_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QP_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " must not be null");
}

template <class T>
void reset(T** out) {
  require(out, "output pointer");
  *out = nullptr;
}

qp_status emit(capi::Report r, qp_report** out) {
  auto* rep = new qp_report{std::move(r), {}};
  rep->json = rep->value.data.dump(2) + "\n";
  *out = rep;
  return rep->value.positive ? QP_OK : QP_NEGATIVE;
}

template <class F>
qp_status report_call(qp_report** out, F&& f) {
  return guarded([&] {
    reset(out);
    return emit(f(), out);
  });
}

capi::StarOptions star_options(const qp_star_options* o) {
  require(o, "options");
  require(o->method, "method");
  capi::StarOptions s;
  s.method = o->method;
  if (o->algebra) s.algebra = o->algebra->value;
  if (o->bivector) s.bivector = o->bivector->value;
  if (o->rmatrix) s.rmatrix = o->rmatrix->value;
  if (o->omega) s.omega = o->omega;
  s.order = o->order;
  return s;
}

}  // namespace

extern "C" {

const char* qp_version(void) { return "1.0.0"; }

const char* qp_status_name(qp_status status) {
  switch (status) {
    case QP_OK: return "ok";
    case QP_NEGATIVE: return "negative";
    case QP_PARSE_ERROR: return "parse error";
    case QP_PRECONDITION: return "precondition violated";
    case QP_INTERNAL: return "internal error";
    case QP_INVALID_ARGUMENT: return "invalid argument";
  }
  return "unknown";
}

const char* qp_last_error(void) { return last_error.c_str(); }

qp_status qp_algebra_gl(int n, qp_algebra** out) {
  return guarded([&] {
    reset(out);
    if (n < 1 || n > 9) throw PreconditionError("gl(n) needs 1 <= n <= 9");
    auto g = lie::gl_basis(n);
    *out = new qp_algebra{g, lie::format_lie_algebra(*g)};
    return QP_OK;
  });
}

qp_status qp_algebra_parse(const char* text, qp_algebra** out) {
  return guarded([&] {
    reset(out);
    require(text, "text");
    auto g = lie::parse_lie_algebra(text);
    *out = new qp_algebra{g, lie::format_lie_algebra(*g)};
    return QP_OK;
  });
}

qp_status qp_algebra_load(const char* path, qp_algebra** out) {
  return guarded([&] {
    reset(out);
    require(path, "path");
    auto g = lie::parse_lie_algebra(text::read_file(path));
    *out = new qp_algebra{g, lie::format_lie_algebra(*g)};
    return QP_OK;
  });
}

int qp_algebra_dim(const qp_algebra* algebra) { return algebra ? algebra->value->dim() : -1; }
const char* qp_algebra_text(const qp_algebra* algebra) { return algebra ? algebra->text.c_str() : ""; }
void qp_algebra_free(qp_algebra* algebra) { delete algebra; }

qp_status qp_bivector_parse(const char* text, qp_bivector** out) {
  return guarded([&] {
    reset(out);
    require(text, "text");
    auto b = fields::parse_bivector(text);
    *out = new qp_bivector{b, fields::format_bivector(b)};
    return QP_OK;
  });
}

qp_status qp_bivector_load(const char* path, qp_bivector** out) {
  return guarded([&] {
    reset(out);
    require(path, "path");
    auto b = fields::parse_bivector(text::read_file(path));
    *out = new qp_bivector{b, fields::format_bivector(b)};
    return QP_OK;
  });
}

int qp_bivector_dim(const qp_bivector* bivector) { return bivector ? bivector->value.dim() : -1; }
const char* qp_bivector_text(const qp_bivector* bivector) { return bivector ? bivector->text.c_str() : ""; }
void qp_bivector_free(qp_bivector* bivector) { delete bivector; }

qp_status qp_rmatrix_parse(const char* text, const char* base_dir, qp_rmatrix** out) {
  return guarded([&] {
    reset(out);
    require(text, "text");
    auto r = lie::parse_rmatrix(text, base_dir ? base_dir : ".");
    *out = new qp_rmatrix{r, lie::format_rmatrix(r)};
    return QP_OK;
  });
}

qp_status qp_rmatrix_load(const char* path, qp_rmatrix** out) {
  return guarded([&] {
    reset(out);
    require(path, "path");
    auto dir = std::filesystem::path(path).parent_path().string();
    auto r = lie::parse_rmatrix(text::read_file(path), dir.empty() ? "." : dir);
    *out = new qp_rmatrix{r, lie::format_rmatrix(r)};
    return QP_OK;
  });
}

const char* qp_rmatrix_text(const qp_rmatrix* rmatrix) { return rmatrix ? rmatrix->text.c_str() : ""; }
void qp_rmatrix_free(qp_rmatrix* rmatrix) { delete rmatrix; }

int qp_report_positive(const qp_report* report) { return report && report->value.positive ? 1 : 0; }
const char* qp_report_text(const qp_report* report) { return report ? report->value.text.c_str() : ""; }
const char* qp_report_json(const qp_report* report) { return report ? report->json.c_str() : ""; }
void qp_report_free(qp_report* report) { delete report; }

qp_status qp_jacobi(const qp_bivector* bivector, qp_report** out) {
  return report_call(out, [&] {
    require(bivector, "bivector");
    return capi::jacobi_report(bivector->value);
  });
}

qp_status qp_curl(const qp_bivector* bivector, qp_report** out) {
  return report_call(out, [&] {
    require(bivector, "bivector");
    return capi::curl_report(bivector->value);
  });
}

qp_status qp_cartan(const qp_bivector* bivector, qp_report** out) {
  return report_call(out, [&] {
    require(bivector, "bivector");
    return capi::cartan_report(bivector->value);
  });
}

qp_status qp_dims(int n, int k, qp_report** out) {
  return report_call(out, [&] { return capi::dims_report(n, k); });
}

qp_status qp_j2(const qp_rmatrix* rmatrix, qp_report** out) {
  return report_call(out, [&] {
    require(rmatrix, "rmatrix");
    return capi::j2_report(rmatrix->value);
  });
}

qp_status qp_cybe(const qp_rmatrix* rmatrix, qp_report** out) {
  return report_call(out, [&] {
    require(rmatrix, "rmatrix");
    return capi::cybe_report(rmatrix->value);
  });
}

qp_status qp_equations(int n, const qp_rmatrix* rmatrix, qp_report** out) {
  return report_call(out, [&] {
    if (n < 1 || n > 9) throw PreconditionError("equations need 1 <= n <= 9");
    return capi::equations_report(n, rmatrix ? &rmatrix->value : nullptr);
  });
}

qp_status qp_central_ext(const qp_algebra* algebra, const char* omega, qp_report** out) {
  return report_call(out, [&] {
    require(algebra, "algebra");
    require(omega, "omega");
    return capi::central_ext_report(algebra->value, omega);
  });
}

qp_status qp_star(const qp_star_options* options, const char* u, const char* v, qp_report** out) {
  return report_call(out, [&] {
    require(u, "u");
    require(v, "v");
    return capi::star_report(star_options(options), u, v);
  });
}

qp_status qp_star_check(const qp_star_options* options, int degree_bound, qp_report** out) {
  return report_call(out, [&] { return capi::star_check_report(star_options(options), degree_bound); });
}

qp_status qp_certify_counterexample(const char* alpha, const char* script, int with_log, qp_report** out) {
  return report_call(out, [&] {
    std::optional<std::string> a, s;
    if (alpha) a = alpha;
    if (script) s = script;
    return capi::certify_report(a, s, with_log != 0);
  });
}

qp_status qp_solve_dim2(const char* a, const char* b, const char* c, qp_report** out) {
  return report_call(out, [&] {
    require(a, "a");
    require(b, "b");
    require(c, "c");
    return capi::solve_dim2_report(a, b, c);
  });
}

}  // extern "C"
