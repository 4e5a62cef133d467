#include <quadpois/quadpois.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

// Owns C handles for the duration of one command.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
};

using Algebra = Handle<qp_algebra, qp_algebra_free>;
using Bivector = Handle<qp_bivector, qp_bivector_free>;
using RMatrix = Handle<qp_rmatrix, qp_rmatrix_free>;
using Report = Handle<qp_report, qp_report_free>;

bool json_output = false;

int fail(qp_status s) {
  std::fprintf(stderr, "quadpois: %s: %s\n", qp_status_name(s), qp_last_error());
  return static_cast<int>(s) == 5 ? 2 : static_cast<int>(s);
}

int print(qp_status s, Report& r) {
  if (s != QP_OK && s != QP_NEGATIVE) return fail(s);
  const char* out = json_output ? qp_report_json(r.p) : qp_report_text(r.p);
  std::fwrite(out, 1, std::string(out).size(), stdout);
  std::fflush(stdout);
  return s == QP_OK ? 0 : 1;
}

qp_status load_algebra(const std::string& arg, Algebra& a) {
  if (arg.rfind("gl", 0) == 0 && arg.size() > 2 && arg.find_first_not_of("0123456789", 2) == std::string::npos) {
    return qp_algebra_gl(std::stoi(arg.substr(2)), &a.p);
  }
  return qp_algebra_load(arg.c_str(), &a.p);
}

std::string read_text(const std::string& path, bool& ok) {
  std::ifstream in(path);
  ok = static_cast<bool>(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic Poisson structures, r-matrices and star products"};
  app.require_subcommand(1);
  app.add_flag("--json", json_output, "Print the JSON report instead of text");
  std::function<int()> action;

  std::string path;
  auto* jacobi = app.add_subcommand("jacobi", "Check [L, L] = 0 for a bivector fixture");
  jacobi->add_option("bivector", path, "Bivector fixture (.biv)")->required();
  auto* curl = app.add_subcommand("curl", "Curl of a quadratic bivector");
  curl->add_option("bivector", path, "Bivector fixture (.biv)")->required();
  auto* cartan = app.add_subcommand("cartan", "Cartan-type analysis of a quadratic bivector");
  cartan->add_option("bivector", path, "Bivector fixture (.biv)")->required();
  for (auto* sub : {jacobi, curl, cartan}) {
    sub->callback([sub, &path, &action] {
      action = [sub, &path] {
        Bivector b;
        if (auto s = qp_bivector_load(path.c_str(), &b.p); s != QP_OK) return fail(s);
        Report r;
        auto name = sub->get_name();
        auto st = name == "jacobi" ? qp_jacobi(b.p, &r.p) : name == "curl" ? qp_curl(b.p, &r.p) : qp_cartan(b.p, &r.p);
        return print(st, r);
      };
    });
  }

  int n = 3, k = 2;
  auto* dims = app.add_subcommand("dims", "Kernel dimension of J^k on gl(n)");
  dims->add_option("--n", n, "Matrix size")->required();
  dims->add_option("--k", k, "Exterior degree")->required();
  dims->callback([&] {
    action = [&] {
      Report r;
      return print(qp_dims(n, k, &r.p), r);
    };
  });

  auto* j2 = app.add_subcommand("j2", "Image J^2(r) of an r-matrix over gl(n)");
  j2->add_option("rmatrix", path, "r-matrix fixture (.rmat)")->required();
  auto* cybe = app.add_subcommand("cybe", "Classical Yang-Baxter check of an r-matrix");
  cybe->add_option("rmatrix", path, "r-matrix fixture (.rmat)")->required();
  for (auto* sub : {j2, cybe}) {
    sub->callback([sub, &path, &action] {
      action = [sub, &path] {
        RMatrix m;
        if (auto s = qp_rmatrix_load(path.c_str(), &m.p); s != QP_OK) return fail(s);
        Report r;
        return print(sub->get_name() == "j2" ? qp_j2(m.p, &r.p) : qp_cybe(m.p, &r.p), r);
      };
    });
  }

  std::string rpath;
  int eq_n = 3;
  auto* equations = app.add_subcommand("equations", "Labeled CYBE equations over gl(n)");
  equations->add_option("--n", eq_n, "Matrix size");
  equations->add_option("--rmatrix", rpath, "Evaluate at this r-matrix instead of the symbolic one");
  equations->callback([&] {
    action = [&] {
      RMatrix m;
      if (!rpath.empty()) {
        if (auto s = qp_rmatrix_load(rpath.c_str(), &m.p); s != QP_OK) return fail(s);
      }
      Report r;
      return print(qp_equations(eq_n, m.p, &r.p), r);
    };
  });

  std::string method = "gutt", algebra_arg, bivector_path, omega, u, v;
  int order = 2, degree = 3;
  auto add_star_options = [&](CLI::App* sub) {
    sub->add_option("--method", method, "gutt | restricted | cartan | first-order")
        ->check(CLI::IsMember({"gutt", "restricted", "cartan", "first-order"}));
    sub->add_option("--algebra", algebra_arg, "Lie algebra fixture or glN");
    sub->add_option("--bivector", bivector_path, "Cartan-type bivector fixture");
    sub->add_option("--rmatrix", rpath, "r-matrix fixture");
    sub->add_option("--omega", omega, "2-cocycle rows separated by ';'");
    sub->add_option("--order", order, "Truncation order N");
  };
  auto with_star = [&](const std::function<int(const qp_star_options&)>& body) {
    Algebra a;
    Bivector b;
    RMatrix m;
    if (!algebra_arg.empty()) {
      if (auto s = load_algebra(algebra_arg, a); s != QP_OK) return fail(s);
    }
    if (!bivector_path.empty()) {
      if (auto s = qp_bivector_load(bivector_path.c_str(), &b.p); s != QP_OK) return fail(s);
    }
    if (!rpath.empty()) {
      if (auto s = qp_rmatrix_load(rpath.c_str(), &m.p); s != QP_OK) return fail(s);
    }
    qp_star_options o{method.c_str(), a.p, b.p, m.p, omega.empty() ? nullptr : omega.c_str(), order};
    return body(o);
  };
  auto* star = app.add_subcommand("star", "Star product u * v");
  add_star_options(star);
  star->add_option("--u", u, "Left factor")->required();
  star->add_option("--v", v, "Right factor")->required();
  star->callback([&] {
    action = [&] {
      return with_star([&](const qp_star_options& o) {
        Report r;
        return print(qp_star(&o, u.c_str(), v.c_str(), &r.p), r);
      });
    };
  });
  auto* star_check = app.add_subcommand("star-check", "Exhaustive star-product axiom check");
  add_star_options(star_check);
  star_check->add_option("--degree", degree, "Monomial degree bound D");
  star_check->callback([&] {
    action = [&] {
      return with_star([&](const qp_star_options& o) {
        Report r;
        return print(qp_star_check(&o, degree, &r.p), r);
      });
    };
  });

  std::string alpha, script_path;
  bool with_log = false;
  auto* certify = app.add_subcommand("certify-counterexample", "Replay the infeasibility certificate");
  certify->add_option("--alpha", alpha, "Rational value of alpha (symbolic when omitted)");
  certify->add_option("--script", script_path, "Replay this script instead of the built-in one");
  certify->add_flag("--log", with_log, "Print the replay log");
  certify->callback([&] {
    action = [&] {
      std::string script;
      if (!script_path.empty()) {
        bool ok = false;
        script = read_text(script_path, ok);
        if (!ok) {
          std::fprintf(stderr, "quadpois: cannot read %s\n", script_path.c_str());
          return 2;
        }
      }
      Report r;
      return print(qp_certify_counterexample(alpha.empty() ? nullptr : alpha.c_str(),
                                             script_path.empty() ? nullptr : script.c_str(), with_log, &r.p),
                   r);
    };
  });

  std::string a, b, c;
  auto* dim2 = app.add_subcommand("solve-dim2", "r-matrix for (a x1^2 + 2b x1 x2 + c x2^2) d1^d2");
  dim2->add_option("a", a)->required();
  dim2->add_option("b", b)->required();
  dim2->add_option("c", c)->required();
  dim2->callback([&] {
    action = [&] {
      Report r;
      return print(qp_solve_dim2(a.c_str(), b.c_str(), c.c_str(), &r.p), r);
    };
  });

  std::string ext_algebra, ext_omega;
  auto* central = app.add_subcommand("central-ext", "Central extension by a 2-cocycle");
  central->add_option("algebra", ext_algebra, "Lie algebra fixture or glN")->required();
  central->add_option("--omega", ext_omega, "2-form rows separated by ';'")->required();
  central->callback([&] {
    action = [&] {
      Algebra g;
      if (auto s = load_algebra(ext_algebra, g); s != QP_OK) return fail(s);
      Report r;
      return print(qp_central_ext(g.p, ext_omega.c_str(), &r.p), r);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return action ? action() : 2;
}
