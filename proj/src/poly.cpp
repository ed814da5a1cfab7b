#include "ffpat/poly.hpp"

#include <algorithm>
#include <charconv>

#include "ffpat/error.hpp"

namespace ffpat {

std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = a.degree(); i >= 0; --i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Poly Poly::monomial(Elem c, int n) {
  if (c == 0) return {};
  std::vector<Elem> v(static_cast<std::size_t>(n) + 1, 0);
  v.back() = c;
  return Poly(std::move(v));
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> out(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = F.add(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
  return Poly(std::move(out));
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> out(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = F.sub(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
  return Poly(std::move(out));
}

Poly neg(const Field& F, const Poly& a) {
  std::vector<Elem> out(a.coeffs());
  for (auto& c : out) c = F.neg(c);
  return Poly(std::move(out));
}

Poly scale(const Field& F, const Poly& a, Elem c) {
  std::vector<Elem> out(a.coeffs());
  for (auto& x : out) x = F.mul(x, c);
  return Poly(std::move(out));
}

Poly shift(const Poly& a, int n) {
  if (a.is_zero() || n == 0) return a;
  std::vector<Elem> out(static_cast<std::size_t>(n), 0);
  out.insert(out.end(), a.coeffs().begin(), a.coeffs().end());
  return Poly(std::move(out));
}

namespace {

constexpr std::size_t kKaratsubaThreshold = 65;

using Span = std::vector<Elem>;

void schoolbook(const Field& F, const Elem* x, std::size_t nx, const Elem* y, std::size_t ny, Elem* out) {
  for (std::size_t i = 0; i < nx; ++i) {
    const Elem xi = x[i];
    if (xi == 0) continue;
    for (std::size_t j = 0; j < ny; ++j) out[i + j] = F.add(out[i + j], F.mul(xi, y[j]));
  }
}

// out (size nx + ny - 1, zero initialised) += x * y
void karatsuba(const Field& F, const Elem* x, std::size_t nx, const Elem* y, std::size_t ny, Elem* out) {
  if (nx < kKaratsubaThreshold || ny < kKaratsubaThreshold) {
    schoolbook(F, x, nx, y, ny, out);
    return;
  }
  const std::size_t h = std::min(nx, ny) / 2;
  // x = x0 + t^h x1, y = y0 + t^h y1
  const std::size_t n1x = nx - h, n1y = ny - h;
  Span z0(2 * h - 1, 0), z2(n1x + n1y - 1, 0);
  karatsuba(F, x, h, y, h, z0.data());
  karatsuba(F, x + h, n1x, y + h, n1y, z2.data());
  Span sx(std::max(h, n1x), 0), sy(std::max(h, n1y), 0);
  for (std::size_t i = 0; i < sx.size(); ++i)
    sx[i] = F.add(i < h ? x[i] : 0, i < n1x ? x[h + i] : 0);
  for (std::size_t i = 0; i < sy.size(); ++i)
    sy[i] = F.add(i < h ? y[i] : 0, i < n1y ? y[h + i] : 0);
  Span z1(sx.size() + sy.size() - 1, 0);
  karatsuba(F, sx.data(), sx.size(), sy.data(), sy.size(), z1.data());
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = F.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = F.sub(z1[i], z2[i]);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = F.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i)
    if (z1[i]) out[h + i] = F.add(out[h + i], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = F.add(out[2 * h + i], z2[i]);
}

}  // namespace

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> out(x.size() + y.size() - 1, 0);
  karatsuba(F, x.data(), x.size(), y.data(), y.size(), out.data());
  return Poly(std::move(out));
}

std::pair<Poly, Poly> divrem(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::DivideByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Elem> r(a.coeffs());
  const auto& d = b.coeffs();
  const int db = b.degree();
  const Elem inv_lead = F.inv(b.lead());
  std::vector<Elem> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int i = a.degree(); i >= db; --i) {
    const Elem c = F.mul(r[static_cast<std::size_t>(i)], inv_lead);
    if (c == 0) continue;
    const int s = i - db;
    quot[static_cast<std::size_t>(s)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(s + j)];
      slot = F.sub(slot, F.mul(c, d[static_cast<std::size_t>(j)]));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(r))};
}

Poly mod(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::DivideByZero, "polynomial reduction modulo zero");
  if (a.degree() < b.degree()) return a;
  std::vector<Elem> r(a.coeffs());
  const auto& d = b.coeffs();
  const int db = b.degree();
  const Elem inv_lead = F.inv(b.lead());
  for (int i = a.degree(); i >= db; --i) {
    const Elem c = F.mul(r[static_cast<std::size_t>(i)], inv_lead);
    if (c == 0) continue;
    const int s = i - db;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(s + j)];
      slot = F.sub(slot, F.mul(c, d[static_cast<std::size_t>(j)]));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return Poly(std::move(r));
}

Poly quo(const Field& F, const Poly& a, const Poly& b) { return divrem(F, a, b).first; }

bool divides(const Field& F, const Poly& d, const Poly& a) {
  if (d.is_zero()) return a.is_zero();
  return mod(F, a, d).is_zero();
}

Poly monic(const Field& F, const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(F, a, F.inv(a.lead()));
}

Poly gcd(const Field& F, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(F, x);
}

Poly lcm(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return monic(F, quo(F, mul(F, a, b), gcd(F, a, b)));
}

ExtendedGcd extended_gcd(const Field& F, const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(), s1;
  Poly t0, t1 = Poly::one();
  while (!r1.is_zero()) {
    auto [qt, r] = divrem(F, r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, sub(F, s0, mul(F, qt, s1)));
    t0 = std::exchange(t1, sub(F, t0, mul(F, qt, t1)));
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem u = F.inv(r0.lead());
  return {scale(F, r0, u), scale(F, s0, u), scale(F, t0, u)};
}

std::optional<Poly> inverse_mod(const Field& F, const Poly& a, const Poly& m) {
  if (m.is_zero()) throw Error(Errc::DivideByZero, "inverse modulo zero");
  if (m.degree() == 0) return Poly{};  // the zero ring
  auto eg = extended_gcd(F, mod(F, a, m), m);
  if (eg.g != Poly::one()) return std::nullopt;
  return mod(F, eg.s, m);
}

Poly derivative(const Field& F, const Poly& a) {
  if (a.degree() < 1) return {};
  std::vector<Elem> out(static_cast<std::size_t>(a.degree()), 0);
  for (int i = 1; i <= a.degree(); ++i) out[static_cast<std::size_t>(i - 1)] = F.mul(F.from_int(i), a[i]);
  return Poly(std::move(out));
}

Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) { return mod(F, mul(F, a, b), m); }

Poly powmod(const Field& F, Poly base, std::uint64_t e, const Poly& m) {
  Poly result = mod(F, Poly::one(), m);
  base = mod(F, base, m);
  while (e) {
    if (e & 1) result = mulmod(F, result, base, m);
    e >>= 1;
    if (e) base = mulmod(F, base, base, m);
  }
  return result;
}

Poly frobenius_mod(const Field& F, const Poly& a, const Poly& m) {
  return powmod(F, a, static_cast<std::uint64_t>(F.q()), m);
}

Elem evaluate(const Field& F, const Poly& a, Elem x) {
  Elem acc = 0;
  for (int i = a.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

std::uint64_t ipow(std::uint64_t q, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (std::uint64_t{1} << 63) / q) throw Error(Errc::InvalidInput, "q^n overflows 64 bits");
    r *= q;
  }
  return r;
}

std::uint64_t to_index(const Field& F, const Poly& a) {
  std::uint64_t idx = 0;
  const auto q = static_cast<std::uint64_t>(F.q());
  for (int i = a.degree(); i >= 0; --i) idx = idx * q + a[i];
  return idx;
}

Poly from_index(const Field& F, std::uint64_t index) {
  std::vector<Elem> c;
  const auto q = static_cast<std::uint64_t>(F.q());
  while (index) {
    c.push_back(static_cast<Elem>(index % q));
    index /= q;
  }
  return Poly(std::move(c));
}

std::string format_poly(const Field& F, const Poly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= a.degree(); ++i) {
    if (i) out += ',';
    out += F.format(a[i]);
  }
  return out;
}

Poly parse_poly(const Field& F, std::string_view text) {
  std::vector<Elem> c;
  std::size_t pos = 0;
  auto strip = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = strip(text);
  if (text.empty()) throw Error(Errc::ParseError, "empty polynomial text");
  while (true) {
    const std::size_t comma = text.find(',', pos);
    c.push_back(F.parse(strip(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos))));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Poly(std::move(c));
}

std::string pretty(const Field& F, const Poly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = a.degree(); i >= 0; --i) {
    const Elem c = a[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    const std::string cs = F.e() == 1 ? std::to_string(c) : "(" + F.format(c) + ")";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += cs;
    out += 't';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

MonicRange::MonicRange(Field F, int d, std::uint64_t begin, std::uint64_t end)
    : F_(std::move(F)), d_(d), begin_(begin), end_(end) {}

MonicRange::MonicRange(Field F, int d) : F_(F), d_(d), begin_(0), end_(ipow(static_cast<std::uint64_t>(F.q()), d)) {}

Poly MonicRange::operator[](std::uint64_t i) const {
  std::vector<Elem> c(static_cast<std::size_t>(d_) + 1, 0);
  std::uint64_t idx = begin_ + i;
  const auto q = static_cast<std::uint64_t>(F_.q());
  for (int k = 0; k < d_; ++k) {
    c[static_cast<std::size_t>(k)] = static_cast<Elem>(idx % q);
    idx /= q;
  }
  c[static_cast<std::size_t>(d_)] = 1;
  return Poly(std::move(c));
}

MonicRange MonicRange::subrange(std::uint64_t begin, std::uint64_t end) const {
  return MonicRange(F_, d_, begin_ + begin, begin_ + std::min(end, size()));
}

MonicRange enumerate_monic(const Field& F, int d) {
  if (d < 0) throw Error(Errc::InvalidInput, "degree must be nonnegative");
  return MonicRange(F, d);
}

}  // namespace ffpat
