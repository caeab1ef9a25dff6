#include "ffharm/field.hpp"

#include <algorithm>
#include <cmath>

namespace ffharm {

namespace {

constexpr std::uint32_t kMaxQ = 2048;  // table memory guard (q^2 entries)
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_prime(long v) {
    if (v < 2) return false;
    for (long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

int pmod(long v, long p) { return int(((v % p) + p) % p); }

// dense polynomials over F_p, low coefficients first, no trailing zeros
using Poly = std::vector<int>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of f by monic g
Poly poly_rem(Poly f, const Poly& g, long p) {
    trim(f);
    int dg = int(g.size()) - 1;
    while (int(f.size()) - 1 >= dg) {
        int shift = int(f.size()) - 1 - dg;
        int lead = f.back();
        for (int i = 0; i <= dg; ++i)
            f[std::size_t(shift + i)] = pmod(f[std::size_t(shift + i)] - long(lead) * g[std::size_t(i)], p);
        trim(f);
    }
    return f;
}

// f is monic of degree n >= 1; reducible iff divisible by some monic
// polynomial of degree 1..n/2
bool is_irreducible(const Poly& f, long p) {
    int n = int(f.size()) - 1;
    if (n == 1) return true;
    for (int dg = 1; dg <= n / 2; ++dg) {
        std::uint64_t count = 1;
        for (int i = 0; i < dg; ++i) count *= std::uint64_t(p);
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(std::size_t(dg) + 1, 0);
            std::uint64_t c = code;
            for (int i = 0; i < dg; ++i) {
                g[std::size_t(i)] = int(c % std::uint64_t(p));
                c /= std::uint64_t(p);
            }
            g[std::size_t(dg)] = 1;
            Poly r = poly_rem(f, g, p);
            if (r.empty()) return false;
        }
    }
    return true;
}

std::vector<int> default_modulus(long p, int n) {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= std::uint64_t(p);
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly f(std::size_t(n) + 1, 0);
        std::uint64_t c = code;
        for (int i = 0; i < n; ++i) {
            f[std::size_t(i)] = int(c % std::uint64_t(p));
            c /= std::uint64_t(p);
        }
        f[std::size_t(n)] = 1;
        if (is_irreducible(f, p)) {
            f.pop_back();
            f.resize(std::size_t(n));
            return f;
        }
    }
    throw Error("ReducibleModulus", "no irreducible polynomial found");  // unreachable
}

}  // namespace

FiniteField::FiniteField(long p, int n, std::optional<std::vector<long>> modulus)
    : p_(p), n_(n) {
    if (!is_prime(p)) throw Error("NonPrime", "p = " + std::to_string(p) + " is not prime");
    if (p == 2) throw Error("EvenCharacteristic", "characteristic must be odd");
    if (n < 1) throw Error("BadModulus", "extension degree must be >= 1");

    double qd = std::pow(double(p), n);
    if (qd > double(kMaxQ))
        throw Error("FieldTooLarge",
                    "q = p^n exceeds the table guard (" + std::to_string(kMaxQ) + ")");
    q_ = 1;
    for (int i = 0; i < n; ++i) q_ *= std::uint32_t(p);

    if (n == 1) {
        if (modulus && !modulus->empty())
            throw Error("BadModulus", "prime fields take no modulus");
    } else if (modulus) {
        if (int(modulus->size()) != n)
            throw Error("BadModulus", "modulus needs exactly n coefficients (c0..c_{n-1})");
        modulus_.resize(std::size_t(n));
        for (int i = 0; i < n; ++i) modulus_[std::size_t(i)] = pmod((*modulus)[std::size_t(i)], p);
        Poly f = modulus_;
        f.push_back(1);
        if (!is_irreducible(f, p))
            throw Error("ReducibleModulus", "modulus is reducible over F_" + std::to_string(p));
    } else {
        modulus_ = default_modulus(p, n);
    }

    build_tables();
}

void FiniteField::build_tables() {
    const std::uint32_t q = q_;
    const long p = p_;
    const int n = n_;

    add_.resize(std::size_t(q) * q);
    sub_.resize(std::size_t(q) * q);
    mul_.resize(std::size_t(q) * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    trace_.resize(q);
    chi_.resize(q);
    eta_.resize(q);
    sqrt_.assign(q, kNoSqrt);

    // digit decomposition of every index
    std::vector<int> dig(std::size_t(q) * n, 0);
    for (std::uint32_t a = 0; a < q; ++a) {
        std::uint32_t c = a;
        for (int i = 0; i < n; ++i) {
            dig[std::size_t(a) * n + i] = int(c % std::uint32_t(p));
            c /= std::uint32_t(p);
        }
    }
    auto encode = [&](const Poly& f) {
        std::uint32_t idx = 0;
        for (int i = n - 1; i >= 0; --i)
            idx = idx * std::uint32_t(p) + std::uint32_t(i < int(f.size()) ? f[std::size_t(i)] : 0);
        return idx;
    };

    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            std::uint32_t s = 0;
            for (int i = n - 1; i >= 0; --i) {
                int d = pmod(long(dig[std::size_t(a) * n + i]) + dig[std::size_t(b) * n + i], p);
                s = s * std::uint32_t(p) + std::uint32_t(d);
            }
            add_[key(a, b)] = s;
        }
        Poly nf(std::size_t(n), 0);
        for (int i = 0; i < n; ++i) nf[std::size_t(i)] = pmod(-long(dig[std::size_t(a) * n + i]), p);
        neg_[a] = encode(nf);
    }
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) sub_[key(a, b)] = add_[key(a, neg_[b])];

    // multiplication: schoolbook product reduced by the modulus
    Poly mod_poly = modulus_;
    mod_poly.push_back(1);
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            if (n == 1) {
                mul_[key(a, b)] = std::uint32_t((std::uint64_t(a) * b) % std::uint64_t(p));
                continue;
            }
            Poly prod(std::size_t(2 * n - 1), 0);
            for (int i = 0; i < n; ++i) {
                int da = dig[std::size_t(a) * n + i];
                if (!da) continue;
                for (int j = 0; j < n; ++j)
                    prod[std::size_t(i + j)] =
                        pmod(prod[std::size_t(i + j)] + long(da) * dig[std::size_t(b) * n + j], p);
            }
            mul_[key(a, b)] = encode(poly_rem(prod, mod_poly, p));
        }
    }

    // inverses via x^(q-2)
    for (std::uint32_t a = 1; a < q; ++a) inv_[a] = pow(a, std::uint64_t(q) - 2);

    // trace through Frobenius orbits; lands in the prime subfield
    for (std::uint32_t a = 0; a < q; ++a) {
        std::uint32_t acc = 0, fr = a;
        for (int i = 0; i < n; ++i) {
            acc = add_[key(acc, fr)];
            fr = pow(fr, std::uint64_t(p));
        }
        trace_[a] = dig[std::size_t(acc) * n + 0];
        chi_[a] = std::polar(1.0, kTwoPi * trace_[a] / double(p));
    }

    // squares: ascending scan keeps the smallest root
    for (std::uint32_t l = 0; l < q; ++l) {
        std::uint32_t s = mul_[key(l, l)];
        if (sqrt_[s] == kNoSqrt) sqrt_[s] = l;
    }
    for (std::uint32_t a = 0; a < q; ++a)
        eta_[a] = (a == 0) ? 0 : (sqrt_[a] != kNoSqrt ? 1 : -1);
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
    if (a == 0) throw Error("DivisionByZero", "0 has no inverse");
    return inv_[a];
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1, base = a;
    while (e) {
        if (e & 1) r = mul_[key(r, base)];
        base = mul_[key(base, base)];
        e >>= 1;
    }
    return r;
}

std::uint32_t FiniteField::from_int(long v) const { return std::uint32_t(pmod(v, p_)); }

std::vector<int> FiniteField::digits(std::uint32_t a) const {
    std::vector<int> out(std::size_t(n_), 0);
    for (int i = 0; i < n_; ++i) {
        out[std::size_t(i)] = int(a % std::uint32_t(p_));
        a /= std::uint32_t(p_);
    }
    return out;
}

std::uint32_t FiniteField::from_digits(std::span<const int> d) const {
    std::uint32_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) {
        int c = i < int(d.size()) ? pmod(d[std::size_t(i)], p_) : 0;
        idx = idx * std::uint32_t(p_) + std::uint32_t(c);
    }
    return idx;
}

std::string FiniteField::modulus_string() const {
    if (n_ == 1) return "";
    std::string s = "t^" + std::to_string(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        int c = modulus_[std::size_t(i)];
        if (!c) continue;
        s += "+";
        if (c != 1 || i == 0) s += std::to_string(c);
        if (i >= 1) {
            s += (c != 1) ? "*t" : "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

FieldPtr build_field(long p, int n, std::optional<std::vector<long>> modulus) {
    return std::make_shared<FiniteField>(p, n, std::move(modulus));
}

FieldPtr build_field_q(long q, std::optional<std::vector<long>> modulus) {
    if (q < 2) throw Error("NonPrime", "q must be a prime power >= 3");
    long p = 0;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;  // q itself prime
    if (p == 2) throw Error("EvenCharacteristic", "q = " + std::to_string(q) + " has characteristic 2");
    int n = 0;
    long rest = q;
    while (rest > 1) {
        if (rest % p != 0)
            throw Error("NonPrime", "q = " + std::to_string(q) + " is not a prime power");
        rest /= p;
        ++n;
    }
    return build_field(p, n, std::move(modulus));
}

static void require_same(const FieldElement& a, const FieldElement& b) {
    if (!a.field || !b.field || !a.field->same_field(*b.field))
        throw Error("MixedFields", "operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same(*this, o);
    return {field, field->add(idx, o.idx)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same(*this, o);
    return {field, field->mul(idx, o.idx)};
}

FieldElement FieldElement::operator-() const { return {field, field->neg(idx)}; }

FieldElement FieldElement::inverse() const { return {field, field->inv(idx)}; }

bool FieldElement::operator==(const FieldElement& o) const {
    return field && o.field && field->same_field(*o.field) && idx == o.idx;
}

}
