#include "ffpat/divisor.hpp"

#include <algorithm>
#include <vector>

#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"

namespace ffpat {

Divisor::Divisor(Map primes) : primes_(std::move(primes)) {
  std::erase_if(primes_, [](const auto& kv) { return kv.second == 0; });
  for (const auto& [p, m] : primes_)
    if (m < 0) throw Error(Errc::InvalidInput, "negative multiplicity in effective divisor");
}

int Divisor::multiplicity(const Poly& prime) const {
  auto it = primes_.find(prime);
  return it == primes_.end() ? 0 : it->second;
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& [p, m] : primes_) d += m * p.degree();
  return d;
}

bool Divisor::is_squarefree() const {
  return std::all_of(primes_.begin(), primes_.end(), [](const auto& kv) { return kv.second == 1; });
}

Poly Divisor::generator(const Field& F) const {
  Poly g = Poly::one();
  for (const auto& [p, m] : primes_)
    for (int i = 0; i < m; ++i) g = mul(F, g, p);
  return g;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor::Map out = a.primes_;
  for (const auto& [p, m] : b.primes_) out[p] += m;
  return Divisor(std::move(out));
}

Divisor divisor_of(const Field& F, const Poly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "divisor of the zero polynomial");
  Divisor::Map out;
  if (f.degree() == 0) return Divisor{};
  for (auto& [p, m] : factor(F, f).factors) out.emplace(p, m);
  return Divisor(std::move(out));
}

int mobius(const Divisor& d) {
  if (!d.is_squarefree()) return 0;
  return d.primes().size() % 2 ? -1 : 1;
}

bool leq(const Divisor& a, const Divisor& b) {
  for (const auto& [p, m] : a.primes())
    if (b.multiplicity(p) < m) return false;
  return true;
}

Divisor lcm(const Divisor& a, const Divisor& b) {
  Divisor::Map out = a.primes();
  for (const auto& [p, m] : b.primes()) out[p] = std::max(out[p], m);
  return Divisor(std::move(out));
}

Divisor meet(const Divisor& a, const Divisor& b) {
  Divisor::Map out;
  for (const auto& [p, m] : a.primes()) {
    const int k = std::min(m, b.multiplicity(p));
    if (k > 0) out.emplace(p, k);
  }
  return Divisor(std::move(out));
}

void divisors_below(const Divisor& D, const std::function<void(const Divisor&)>& visit) {
  std::vector<std::pair<Poly, int>> primes(D.primes().begin(), D.primes().end());
  std::vector<int> e(primes.size(), 0);
  while (true) {
    Divisor::Map m;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (e[i]) m.emplace(primes[i].first, e[i]);
    visit(Divisor(std::move(m)));
    std::size_t i = 0;
    while (i < primes.size() && e[i] == primes[i].second) e[i++] = 0;
    if (i == primes.size()) return;
    ++e[i];
  }
}

std::string format_divisor(const Field& F, const Divisor& d) {
  std::string out;
  for (const auto& [p, m] : d.primes()) {
    if (!out.empty()) out += ';';
    out += format_poly(F, p) + '^' + std::to_string(m);
  }
  return out;
}

Divisor parse_divisor(const Field& F, std::string_view text) {
  Divisor::Map out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t caret = item.rfind('^');
    if (caret == std::string_view::npos) throw Error(Errc::ParseError, "divisor entry lacks '^mult'");
    const Poly p = parse_poly(F, item.substr(0, caret));
    int m = 0;
    try {
      m = std::stoi(std::string(item.substr(caret + 1)));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad multiplicity in divisor entry");
    }
    if (m < 1 || !p.is_monic() || !is_irreducible(F, p))
      throw Error(Errc::ParseError, "divisor entry is not a monic irreducible with positive multiplicity");
    out[p] += m;
    pos = end + 1;
  }
  return Divisor(std::move(out));
}

CurveModel CurveModel::twisted(const Field& F, const Poly& g) {
  if (!g.is_monic()) throw Error(Errc::InvalidInput, "twist polynomial must be monic");
  if (gcd(F, g, derivative(F, g)).degree() > 0) throw Error(Errc::InvalidInput, "twist polynomial must be squarefree");
  return {F, g};
}

}  // namespace ffpat
