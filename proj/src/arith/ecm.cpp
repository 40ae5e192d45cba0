#include <vector>

#include "modular.hpp"

namespace steiner::arith::detail {

namespace {

constexpr u64 kStage2Factor = 10;
constexpr u64 kMaxB1 = 50'000;

struct Level {
  u64 b1;
  u64 curves;  // 0: repeat until the budget runs out
};

constexpr Level kLevels[] = {{2'000, 25}, {11'000, 90}, {kMaxB1, 0}};

const std::vector<bool>& stage2_primes() {
  static const std::vector<bool> table = [] {
    const u64 limit = kMaxB1 * kStage2Factor + 1;
    std::vector<bool> prime(limit, true);
    prime[0] = prime[1] = false;
    for (u64 i = 2; i * i < limit; ++i)
      if (prime[i])
        for (u64 j = i * i; j < limit; j += i) prime[j] = false;
    return prime;
  }();
  return table;
}

class Mont128Ring {
 public:
  using T = u128;
  explicit Mont128Ring(const Integer& n) : m_(to_u128(n)) {}
  T from_u64(u64 x) const { return m_.to_mont(x); }
  T add(T a, T b) const { return m_.add(a, b); }
  T sub(T a, T b) const { return m_.sub(a, b); }
  T mul(T a, T b) const { return m_.mul(a, b); }
  Integer gcd_n(T a) const { return to_integer(gcd_u128(a, m_.modulus())); }

 private:
  Mont128 m_;
};

class MpzRing {
 public:
  using T = Integer;
  explicit MpzRing(const Integer& n) : n_(n) {}
  T from_u64(u64 x) const { return Integer(static_cast<unsigned long>(x)) % n_; }
  T add(const T& a, const T& b) const {
    T s = a + b;
    if (s >= n_) s -= n_;
    return s;
  }
  T sub(const T& a, const T& b) const {
    T s = a - b;
    if (s < 0) s += n_;
    return s;
  }
  T mul(const T& a, const T& b) const {
    T s;
    mpz_mul(s.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), n_.get_mpz_t());
    return s;
  }
  Integer gcd_n(const T& a) const {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n_.get_mpz_t());
    return g;
  }

 private:
  Integer n_;
};

// x-only arithmetic on B y^2 = x^3 + A x^2 + x with a24 = (A+2)/4 kept as a
// fraction num/den so no inversion is needed.
template <class Ring>
class Curve {
 public:
  using T = typename Ring::T;
  struct Point {
    T x, z;
  };

  Curve(const Ring& ring, T a24_num, T a24_den) : r_(ring), num_(a24_num), den_(a24_den) {}

  Point dbl(const Point& p) const {
    const T s = r_.add(p.x, p.z), d = r_.sub(p.x, p.z);
    const T ss = r_.mul(s, s), dd = r_.mul(d, d);
    const T t = r_.sub(ss, dd);
    return {r_.mul(den_, r_.mul(ss, dd)), r_.mul(t, r_.add(r_.mul(den_, dd), r_.mul(num_, t)))};
  }

  // p + q given p - q.
  Point add(const Point& p, const Point& q, const Point& diff) const {
    const T u = r_.mul(r_.sub(p.x, p.z), r_.add(q.x, q.z));
    const T v = r_.mul(r_.add(p.x, p.z), r_.sub(q.x, q.z));
    const T s = r_.add(u, v), d = r_.sub(u, v);
    return {r_.mul(diff.z, r_.mul(s, s)), r_.mul(diff.x, r_.mul(d, d))};
  }

  Point ladder(const Point& p, u64 k) const {
    if (k == 1) return p;
    Point r0 = p, r1 = dbl(p);
    for (int bit = 62 - __builtin_clzll(k); bit >= 0; --bit) {
      if ((k >> bit) & 1) {
        r0 = add(r1, r0, p);
        r1 = dbl(r1);
      } else {
        r1 = add(r0, r1, p);
        r0 = dbl(r0);
      }
    }
    return r0;
  }

 private:
  const Ring& r_;
  T num_, den_;
};

u64 bit_length(u64 x) { return 64 - static_cast<u64>(__builtin_clzll(x)); }

// One curve from Suyama's parametrization; returns a divisor in (1, n) or 1.
template <class Ring>
Integer run_curve(const Ring& ring, const Integer& n, u64 sigma, u64 b1, WorkBudget& budget) {
  using T = typename Ring::T;
  const T u = ring.sub(ring.from_u64(sigma * sigma), ring.from_u64(5));
  const T v = ring.from_u64(4 * sigma);
  const T u3 = ring.mul(ring.mul(u, u), u);
  const T v3 = ring.mul(ring.mul(v, v), v);
  const T vmu = ring.sub(v, u);
  const T num = ring.mul(ring.mul(ring.mul(vmu, vmu), vmu), ring.add(ring.add(ring.add(u, u), u), v));
  const T den = ring.mul(ring.from_u64(16), ring.mul(u3, v));

  auto proper = [&](const Integer& g) { return g > 1 && g < n; };
  Integer g = ring.gcd_n(ring.mul(den, v3));
  if (g != 1) return proper(g) ? g : Integer(1);

  const Curve<Ring> curve(ring, num, den);
  typename Curve<Ring>::Point q{u3, v3};
  for (std::uint32_t p : small_primes()) {
    if (p > b1) break;
    u64 pk = p;
    while (pk <= b1 / p) pk *= p;
    budget.spend(bit_length(pk));
    q = curve.ladder(q, pk);
  }
  g = ring.gcd_n(q.z);
  if (g != 1) return proper(g) ? g : Integer(1);

  // Stage 2: walk the odd multiples s*Q for s in (b1, kStage2Factor*b1].
  const std::vector<bool>& prime = stage2_primes();
  const u64 b2 = b1 * kStage2Factor;
  const u64 start = b1 + 1 + (b1 % 2);
  const auto q2 = curve.dbl(q);
  auto prev = curve.ladder(q, start - 2);
  auto cur = curve.ladder(q, start);
  T acc = ring.from_u64(1);
  u64 steps = 0;
  for (u64 s = start; s <= b2; s += 2) {
    if (prime[s]) acc = ring.mul(acc, cur.z);
    auto next = curve.add(cur, q2, prev);
    prev = cur;
    cur = next;
    if (++steps % 1024 == 0) budget.spend(1024);
  }
  g = ring.gcd_n(acc);
  return proper(g) ? g : Integer(1);
}

template <class Ring>
Integer ecm_with(const Ring& ring, const Integer& n, WorkBudget& budget) {
  u64 sigma = 6;
  for (const Level& level : kLevels) {
    for (u64 c = 0; level.curves == 0 || c < level.curves; ++c) {
      Integer g = run_curve(ring, n, sigma++, level.b1, budget);
      if (g != 1) return g;
    }
  }
  throw SelfCheckFailure("unreachable: the last ECM level repeats until the budget is exhausted");
}

}  // namespace

Integer ecm_find_factor(const Integer& n, WorkBudget& budget) {
  if (mpz_odd_p(n.get_mpz_t()) && mpz_sizeinbase(n.get_mpz_t(), 2) <= 128) return ecm_with(Mont128Ring(n), n, budget);
  return ecm_with(MpzRing(n), n, budget);
}

}  // namespace steiner::arith::detail
