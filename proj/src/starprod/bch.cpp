#include "starprod/bch.hpp"

#include "common/error.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace quadpois::star {

namespace {

using Element = std::map<std::string, Rational>;
constexpr int kMaxLength = kMaxBchOrder + 1;

Element multiply(const Element& a, const Element& b) {
  Element out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (wa.size() + wb.size() > static_cast<std::size_t>(kMaxLength)) continue;
      out[wa + wb] += ca * cb;
    }
  }
  return out;
}

struct Tables {
  std::vector<std::vector<std::pair<std::string, Rational>>> words;
  std::vector<std::vector<std::pair<std::string, Rational>>> dynkin;
};

const Tables& tables() {
  static Tables t;
  static std::once_flag once;
  std::call_once(once, [] {
    // exp(A) exp(B) - 1 = sum_{p+q>0} A^p B^q / (p! q!)
    Element p;
    Rational fp = 1;
    for (int i = 0; i <= kMaxLength; ++i) {
      if (i) fp *= i;
      Rational fq = 1;
      for (int j = 0; i + j <= kMaxLength; ++j) {
        if (j) fq *= j;
        if (i + j == 0) continue;
        p[std::string(static_cast<std::size_t>(i), 'A') + std::string(static_cast<std::size_t>(j), 'B')] =
            Rational(1) / (fp * fq);
      }
    }
    // log(1 + P) = sum_k (-1)^{k+1} P^k / k
    Element log, power = p;
    for (int k = 1; k <= kMaxLength; ++k) {
      Rational c(k % 2 == 1 ? 1 : -1, k);
      c.canonicalize();
      for (const auto& [w, v] : power) log[w] += c * v;
      power = multiply(power, p);
    }
    t.words.resize(static_cast<std::size_t>(kMaxLength) + 1);
    t.dynkin.resize(static_cast<std::size_t>(kMaxLength) + 1);
    for (const auto& [w, v] : log) {
      if (v == 0) continue;
      auto m = w.size();
      t.words[m].emplace_back(w, v);
      t.dynkin[m].emplace_back(w, v / Rational(static_cast<long>(m)));
    }
  });
  return t;
}

void check_degree(int m) {
  if (m < 1 || m > kMaxLength) throw PreconditionError("BCH degree must be between 1 and " + std::to_string(kMaxLength));
}

template <class T>
std::vector<std::vector<T>> bch_impl(const lie::LieAlgebra& g, const std::vector<T>& x, const std::vector<T>& y,
                                     int order) {
  if (order < 0 || order > kMaxBchOrder) {
    throw PreconditionError("BCH truncation order must be between 0 and " + std::to_string(kMaxBchOrder));
  }
  if (x.size() != static_cast<std::size_t>(g.dim()) || y.size() != x.size()) {
    throw InvalidArgument("vector length does not match algebra dimension");
  }
  std::map<std::string, std::vector<T>> nested;  // right-nested bracket of each suffix
  nested["A"] = x;
  nested["B"] = y;
  std::function<const std::vector<T>&(const std::string&)> br = [&](const std::string& w) -> const std::vector<T>& {
    auto it = nested.find(w);
    if (it != nested.end()) return it->second;
    auto head = w.substr(0, 1);
    const auto& tail = br(w.substr(1));
    auto v = g.bracket(head == "A" ? x : y, tail);
    return nested.emplace(w, std::move(v)).first->second;
  };
  std::vector<std::vector<T>> out;
  for (int k = 0; k <= order; ++k) {
    std::vector<T> z(x.size());
    for (const auto& [w, c] : tables().dynkin[static_cast<std::size_t>(k + 1)]) {
      const auto& v = br(w);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += v[i] * T(c);
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

const std::vector<std::pair<std::string, Rational>>& bch_dynkin_coefficients(int m) {
  check_degree(m);
  return tables().dynkin[static_cast<std::size_t>(m)];
}

const std::vector<std::pair<std::string, Rational>>& bch_word_coefficients(int m) {
  check_degree(m);
  return tables().words[static_cast<std::size_t>(m)];
}

std::vector<std::vector<Rational>> bch_truncate(const lie::LieAlgebra& g, const std::vector<Rational>& x,
                                                const std::vector<Rational>& y, int order) {
  return bch_impl(g, x, y, order);
}

std::vector<std::vector<Poly>> bch_truncate(const lie::LieAlgebra& g, const std::vector<Poly>& x,
                                            const std::vector<Poly>& y, int order) {
  return bch_impl(g, x, y, order);
}

}  // namespace quadpois::star
