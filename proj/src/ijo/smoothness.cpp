// Stratified smoothness decision for Delsarte hypersurfaces with unit
// coefficients. A point with support S lies in the torus of the coordinate
// stratum S; on that stratum each partial derivative keeps only the terms whose
// monomial is supported in S, and the resulting system is either trivially
// unsolvable (a single term), identically zero, or binomial.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ijo/delsarte.hpp"
#include "ijo/error.hpp"

namespace ijo {

namespace {

struct Term {
  int coefficient;
  std::vector<int> exponent;
};

std::string monomial_text(int coefficient, const std::vector<int>& exponent) {
  std::ostringstream out;
  out << coefficient;
  for (std::size_t i = 0; i < exponent.size(); ++i) {
    if (exponent[i] == 0) continue;
    out << "*x" << i;
    if (exponent[i] > 1) out << '^' << exponent[i];
  }
  return out.str();
}

std::string support_text(const std::vector<int>& support) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < support.size(); ++i) out << (i ? "," : "") << support[i];
  out << '}';
  return out.str();
}

unsigned image_mask(const PermSymmetry& sigma, unsigned mask) {
  unsigned out = 0;
  for (std::size_t i = 0; i < sigma.image.size(); ++i)
    if (mask & (1u << i)) out |= 1u << sigma.image[i];
  return out;
}

mpq_class rational_power(const mpq_class& base, const mpz_class& exponent) {
  const unsigned long e = mpz_class(abs(exponent)).get_ui();
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  mpq_class out = exponent >= 0 ? mpq_class(num, den) : mpq_class(den, num);
  out.canonicalize();
  return out;
}

double unit_normalize(std::vector<std::complex<double>>& x) {
  double norm = 0.0;
  for (const auto& v : x) norm += std::norm(v);
  norm = std::sqrt(norm);
  for (auto& v : x) v /= norm;
  return norm;
}

double vector_norm(const std::vector<std::complex<double>>& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

// Solves x^{v_j} = gamma_j over the torus of the support, given that the
// system is consistent. Uses U V W = D: with z = log x restricted to the
// support, V z = log gamma (mod 2 pi i) reduces to D y = U log gamma with the
// rows beyond the rank already in 2 pi i Z.
std::vector<std::complex<double>> torus_solution(const std::vector<BinomialEquation>& system,
                                                 const std::vector<int>& support, std::size_t vars) {
  std::vector<std::complex<double>> point(vars, 0.0);
  if (system.empty()) {
    for (int i : support) point[i] = 1.0;
    return point;
  }
  IntegerMatrix v(system.size(), support.size());
  for (std::size_t j = 0; j < system.size(); ++j)
    for (std::size_t c = 0; c < support.size(); ++c) v(j, c) = system[j].exponent[support[c]];
  const SnfDecomposition snf = smith_normal_form(v);

  std::vector<std::complex<double>> log_gamma(system.size());
  for (std::size_t j = 0; j < system.size(); ++j) {
    const double value = system[j].constant.get_d();
    log_gamma[j] = {std::log(std::abs(value)), value < 0 ? std::numbers::pi : 0.0};
  }
  std::vector<std::complex<double>> y(support.size(), 0.0);
  for (std::size_t i = 0; i < snf.rank(); ++i) {
    std::complex<double> c = 0.0;
    for (std::size_t j = 0; j < system.size(); ++j) c += snf.U(i, j).get_d() * log_gamma[j];
    y[i] = c / snf.D(i, i).get_d();
  }
  for (std::size_t c = 0; c < support.size(); ++c) {
    std::complex<double> z = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) z += snf.V(c, k).get_d() * y[k];
    point[support[c]] = std::exp(z);
  }
  return point;
}

}  // namespace

SmoothnessReport smoothness_check(const ExponentMatrix& m) {
  const std::size_t vars = m.size();
  if (vars > 16) throw Error(ErrorCode::InvalidArgument, "too many variables for stratum enumeration");
  const auto symmetries = permutation_symmetries(m);

  SmoothnessReport report;
  std::vector<std::string> unsupported;

  for (unsigned mask = 1; mask < (1u << vars); ++mask) {
    bool representative = true;
    for (const auto& sigma : symmetries)
      if (image_mask(sigma, mask) < mask) {
        representative = false;
        break;
      }
    if (!representative) continue;

    std::vector<int> support;
    for (std::size_t i = 0; i < vars; ++i)
      if (mask & (1u << i)) support.push_back(static_cast<int>(i));

    // Surviving terms of every partial derivative on this stratum.
    std::vector<std::vector<Term>> equations(vars);
    for (std::size_t j = 0; j < vars; ++j)
      for (const auto& row : m.rows()) {
        if (row[j] == 0) continue;
        Term t{row[j], row};
        t.exponent[j] -= 1;
        bool inside = true;
        for (std::size_t i = 0; i < vars; ++i)
          if (t.exponent[i] > 0 && !(mask & (1u << i))) inside = false;
        if (inside) equations[j].push_back(std::move(t));
      }

    std::optional<std::size_t> single;
    bool all_empty = true, wide = false;
    for (std::size_t j = 0; j < vars; ++j) {
      if (equations[j].size() == 1 && !single) single = j;
      if (!equations[j].empty()) all_empty = false;
      if (equations[j].size() >= 3) wide = true;
    }

    if (single) {
      const Term& t = equations[*single].front();
      report.certificate.push_back({support, "partial " + std::to_string(*single) + " restricts to the single term " +
                                                 monomial_text(t.coefficient, t.exponent)});
      continue;
    }

    std::vector<BinomialEquation> system;
    if (!all_empty) {
      if (wide) {
        std::ostringstream why;
        why << "stratum " << support_text(support) << " has a partial with three or more surviving terms";
        unsupported.push_back(why.str());
        report.certificate.push_back({support, "unsupported: " + why.str()});
        continue;
      }
      for (std::size_t j = 0; j < vars; ++j) {
        if (equations[j].empty()) continue;
        const Term& a = equations[j][0];
        const Term& b = equations[j][1];
        BinomialEquation eq;
        eq.partial = static_cast<int>(j);
        eq.exponent.resize(vars);
        for (std::size_t i = 0; i < vars; ++i) eq.exponent[i] = a.exponent[i] - b.exponent[i];
        eq.constant = mpq_class(-b.coefficient, a.coefficient);
        eq.constant.canonicalize();
        system.push_back(std::move(eq));
      }

      IntegerMatrix exps(system.size(), support.size());
      for (std::size_t j = 0; j < system.size(); ++j)
        for (std::size_t c = 0; c < support.size(); ++c) exps(j, c) = system[j].exponent[support[c]];

      std::optional<std::string> obstruction;
      for (auto lambda : left_kernel(exps)) {
        auto lead = std::find_if(lambda.begin(), lambda.end(), [](const mpz_class& x) { return x != 0; });
        if (lead != lambda.end() && *lead < 0)
          for (auto& x : lambda) x = -x;
        mpq_class product = 1;
        for (std::size_t j = 0; j < system.size(); ++j)
          if (lambda[j] != 0) product *= rational_power(system[j].constant, lambda[j]);
        if (product != 1) {
          std::ostringstream why;
          why << "binomial system inconsistent: kernel vector (";
          for (std::size_t j = 0; j < lambda.size(); ++j) why << (j ? "," : "") << lambda[j].get_str();
          why << ") gives product " << product.get_str() << " != 1";
          obstruction = why.str();
          break;
        }
      }
      if (obstruction) {
        report.certificate.push_back({support, *obstruction});
        continue;
      }
    }

    // Singular stratum: every partial vanishes identically or the binomial
    // system has a torus solution.
    SingularWitness witness;
    witness.support = support;
    witness.point = torus_solution(system, support, vars);
    witness.system = std::move(system);
    unit_normalize(witness.point);
    witness.gradient_norm = vector_norm(gradient(m, witness.point));
    report.certificate.push_back({support, all_empty ? "every partial vanishes identically on the stratum"
                                                     : "binomial system consistent; torus solution exists"});
    report.verdict = Smoothness::Singular;
    report.witness = std::move(witness);
    return report;
  }

  if (!unsupported.empty()) {
    report.verdict = Smoothness::Unsupported;
    report.unsupported_reason = unsupported.front();
  }
  return report;
}

}  // namespace ijo
