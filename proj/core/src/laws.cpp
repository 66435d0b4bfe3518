#include "spectail/laws.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "format_util.hpp"

namespace spectail {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Survival of the magnitude part of a law (law with kind == magnitude).
PotentialLaw magnitude_of(const PotentialLaw& law) {
  PotentialLaw m = law;
  m.kind = law.magnitude;
  return m;
}

}  // namespace

PotentialLaw weibull_law(double C, double beta) {
  require(C > 0.0, "law: weibull C must be positive");
  require(beta > 0.0, "law: weibull beta must be positive");
  PotentialLaw law;
  law.kind = LawKind::WeibullTail;
  law.C = C;
  law.beta = beta;
  return law;
}

PotentialLaw pareto_law(double C, double beta) {
  require(C > 0.0, "law: pareto C must be positive");
  require(beta > 0.0, "law: pareto beta must be positive");
  PotentialLaw law;
  law.kind = LawKind::ParetoTail;
  law.C = C;
  law.beta = beta;
  return law;
}

PotentialLaw constant_law(double value) {
  require(std::isfinite(value), "law: constant value must be finite");
  PotentialLaw law;
  law.kind = LawKind::Constant;
  law.value = value;
  return law;
}

PotentialLaw signed_law(const PotentialLaw& magnitude) {
  require(magnitude.kind != LawKind::SignedMixture,
          "law: signed() cannot wrap another signed law");
  PotentialLaw law = magnitude;
  law.kind = LawKind::SignedMixture;
  law.magnitude = magnitude.kind;
  return law;
}

double survival(const PotentialLaw& law, double t) {
  if (t == -std::numeric_limits<double>::infinity()) return 1.0;
  switch (law.kind) {
    case LawKind::WeibullTail:
      return t < 0.0 ? 1.0 : std::exp(-law.C * std::pow(t, law.beta));
    case LawKind::ParetoTail: {
      if (t <= 0.0) return 1.0;
      const double s = law.C * std::pow(t, -law.beta);
      return s < 1.0 ? s : 1.0;
    }
    case LawKind::Constant:
      return t < law.value ? 1.0 : 0.0;
    case LawKind::SignedMixture: {
      const PotentialLaw mag = magnitude_of(law);
      if (t >= 0.0) return 0.5 * survival(mag, t);
      return 1.0 - 0.5 * survival(mag, -t);
    }
  }
  return 0.0;
}

double cdf(const PotentialLaw& law, double t) { return 1.0 - survival(law, t); }

double log_survival(const PotentialLaw& law, double t) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (t == -std::numeric_limits<double>::infinity()) return 0.0;
  switch (law.kind) {
    case LawKind::WeibullTail:
      return t < 0.0 ? 0.0 : -law.C * std::pow(t, law.beta);
    case LawKind::ParetoTail: {
      if (t <= 0.0) return 0.0;
      const double ls = std::log(law.C) - law.beta * std::log(t);
      return ls < 0.0 ? ls : 0.0;
    }
    case LawKind::Constant:
      return t < law.value ? 0.0 : kNegInf;
    case LawKind::SignedMixture: {
      const PotentialLaw mag = magnitude_of(law);
      if (t >= 0.0) return std::log(0.5) + log_survival(mag, t);
      return std::log1p(-0.5 * survival(mag, -t));
    }
  }
  return kNegInf;
}

double sample(const PotentialLaw& law, RandomStream& stream) {
  switch (law.kind) {
    case LawKind::WeibullTail:
      return std::pow(stream.exponential() / law.C, 1.0 / law.beta);
    case LawKind::ParetoTail:
      return std::pow(law.C / stream.uniform_open01(), 1.0 / law.beta);
    case LawKind::Constant:
      return law.value;
    case LawKind::SignedMixture: {
      const double sgn = stream.uniform01() < 0.5 ? 1.0 : -1.0;
      return sgn * sample(magnitude_of(law), stream);
    }
  }
  return 0.0;
}

double max_scaled_survival(const PotentialLaw& law, std::size_t N, double alpha,
                           double lambda) {
  require(N > 0, "max_scaled_survival: N must be positive");
  const double t = std::pow(static_cast<double>(N), alpha) * lambda;
  const double p = survival(law, t);
  return -std::expm1(static_cast<double>(N) * std::log1p(-p));
}

double log_max_scaled_survival(const PotentialLaw& law, std::size_t N,
                               double alpha, double lambda) {
  require(N > 0, "log_max_scaled_survival: N must be positive");
  const double t = std::pow(static_cast<double>(N), alpha) * lambda;
  const double ls = log_survival(law, t);
  const double n = static_cast<double>(N);
  if (ls > -13.8) {  // survival large enough for the direct formula
    const double p = std::exp(ls);
    return std::log(-std::expm1(n * std::log1p(-p)));
  }
  const double ly = std::log(n) + ls;  // log(N p); 1-(1-p)^N = N p (1 + O(N p))
  if (ly > -700.0) return std::log(-std::expm1(-std::exp(ly)));
  return ly;
}

RightTail right_tail(const PotentialLaw& law) {
  RightTail rt;
  switch (law.kind) {
    case LawKind::WeibullTail:
    case LawKind::ParetoTail:
      rt.kind = law.kind;
      rt.C = law.C;
      rt.beta = law.beta;
      break;
    case LawKind::Constant:
      rt.kind = LawKind::Constant;
      break;
    case LawKind::SignedMixture:
      rt.kind = law.magnitude;
      if (rt.kind != LawKind::Constant) {
        rt.C = 0.5 * law.C;
        rt.beta = law.beta;
      }
      break;
  }
  return rt;
}

double frechet_cdf(const FrechetLaw& law, double x) {
  require(law.C > 0.0 && law.exponent > 0.0,
          "frechet: C and exponent must be positive");
  if (x <= 0.0) return 0.0;
  return std::exp(-law.C * std::pow(x, -law.exponent));
}

double frechet_sample(const FrechetLaw& law, RandomStream& stream) {
  require(law.C > 0.0 && law.exponent > 0.0,
          "frechet: C and exponent must be positive");
  return std::pow(law.C / stream.exponential(), 1.0 / law.exponent);
}

double sample_chi(RandomStream& stream, double k) {
  require(k > 0.0, "sample_chi: degrees of freedom must be positive");
  return std::sqrt(2.0 * stream.gamma(0.5 * k));
}

namespace {

struct LawParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit LawParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("law: " + what + " in \"" + text + "\"");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a law name");
    std::string name = text.substr(start, pos - start);
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return name;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  double number(const char* what) {
    skip_ws();
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail(std::string("expected a number for ") + what);
    pos += static_cast<std::size_t>(end - begin);
    return v;
  }

  PotentialLaw law() {
    const std::string name = ident();
    expect('(');
    PotentialLaw out;
    if (name == "weibull" || name == "pareto") {
      const double C = number("C");
      expect(',');
      const double beta = number("beta");
      out = name == "weibull" ? weibull_law(C, beta) : pareto_law(C, beta);
    } else if (name == "constant") {
      out = constant_law(number("value"));
    } else if (name == "signed") {
      out = signed_law(law());
    } else {
      fail("unknown law \"" + name + "\"");
    }
    expect(')');
    return out;
  }

  PotentialLaw parse() {
    PotentialLaw out = law();
    skip_ws();
    if (pos != text.size()) fail("trailing characters");
    return out;
  }
};

using detail::fmt17;

}  // namespace

PotentialLaw parse_law(const std::string& text) { return LawParser(text).parse(); }

std::string render_law(const PotentialLaw& law) {
  switch (law.kind) {
    case LawKind::WeibullTail:
      return "weibull(" + fmt17(law.C) + "," + fmt17(law.beta) + ")";
    case LawKind::ParetoTail:
      return "pareto(" + fmt17(law.C) + "," + fmt17(law.beta) + ")";
    case LawKind::Constant:
      return "constant(" + fmt17(law.value) + ")";
    case LawKind::SignedMixture:
      return "signed(" + render_law(magnitude_of(law)) + ")";
  }
  return "constant(0)";
}

}  // namespace spectail
