#include "lf/finite_field.hpp"

#include <map>
#include <sstream>

#include "lf/error.hpp"

namespace lf {

namespace {

// Standard (Conway) moduli, lowest degree first.
const std::map<std::pair<int, int>, std::vector<int>>& standard_moduli() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 1, 4, 0, 1}},
        {{7, 2}, {3, 6, 1}},
        {{7, 3}, {4, 0, 6, 1}},
    };
    return table;
}

int mod(long a, int p) { return static_cast<int>(((a % p) + p) % p); }

// Polynomial remainder over F_p, both low-first, b monic.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        int c = a[i];
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = mod(a[i - db + j] - static_cast<long>(c) * b[j], p);
    }
    if (static_cast<int>(a.size()) > db) a.resize(db);
    return a;
}

std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b,
                             const std::vector<int>& m, int p) {
    std::vector<int> c(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = mod(c[i + j] + static_cast<long>(a[i]) * b[j], p);
    return poly_rem(c, m, p);
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool irreducible_mod_p(int p, const std::vector<int>& f) {
    // Rabin-style test by brute force over monic divisors is too slow for
    // large degrees; degrees here are at most 16, so test x^{p^k} - x.
    const int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    auto powmod = [&](std::vector<int> base, long long e) {
        std::vector<int> result{1};
        while (e > 0) {
            if (e & 1) result = poly_mulmod(result, base, f, p);
            base = poly_mulmod(base, base, f, p);
            e >>= 1;
        }
        return result;
    };
    auto gcd_is_one = [&](std::vector<int> a, std::vector<int> b) {
        auto trim = [](std::vector<int>& v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
        };
        trim(a);
        trim(b);
        while (!b.empty()) {
            int inv = 1;
            while ((static_cast<long>(inv) * b.back()) % p != 1) ++inv;
            std::vector<int> bm(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) bm[i] = mod(static_cast<long>(b[i]) * inv, p);
            a = a.size() >= bm.size() ? poly_rem(a, bm, p) : a;
            trim(a);
            std::swap(a, b);
        }
        return a.size() == 1;
    };
    // x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for prime l | n.
    std::vector<int> x{0, 1};
    auto frob_iter = [&](int k) {
        std::vector<int> y = x;
        for (int i = 0; i < k; ++i) y = powmod(y, p);
        return y;
    };
    auto xn = frob_iter(n);
    xn.resize(std::max<std::size_t>(xn.size(), 2), 0);
    std::vector<int> diff = xn;
    diff[1] = mod(diff[1] - 1, p);
    for (int v : diff)
        if (v != 0) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime(l)) continue;
        auto y = frob_iter(n / l);
        y.resize(std::max<std::size_t>(y.size(), 2), 0);
        y[1] = mod(y[1] - 1, p);
        if (!gcd_is_one(f, y)) return false;
    }
    return true;
}

FiniteField::FiniteField(int p, std::vector<int> modulus) : p_(p), modulus_(std::move(modulus)) {
    r_ = static_cast<int>(modulus_.size()) - 1;
    long q = 1;
    for (int i = 0; i < r_; ++i) q *= p_;
    if (q > 65536) fail(ErrorKind::Unsupported, "finite fields are limited to at most 65536 elements");
    q_ = static_cast<int>(q);
    neg_.resize(q_);
    for (int a = 0; a < q_; ++a) {
        auto c = coords(static_cast<Fq>(a));
        for (int& x : c) x = mod(-x, p_);
        neg_[a] = from_coords(c);
    }
    if (p_ != 2 && q_ <= 1024) {
        add_.resize(static_cast<std::size_t>(q_) * q_);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) add_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
    }
    // Find a primitive element and build log tables.
    log_.assign(q_, -1);
    exp_.assign(2 * (q_ - 1) + 1, 0);
    const Fq start = r_ == 1 ? 2 % q_ : static_cast<Fq>(p_);
    for (int cand = start; cand < q_; ++cand) {
        if (q_ == 2) {
            exp_[0] = 1;
            break;
        }
        Fq g = static_cast<Fq>(cand);
        Fq x = 1;
        int order = 0;
        do {
            x = mul_poly(x, g);
            ++order;
        } while (x != 1 && order < q_);
        if (order == q_ - 1) {
            x = 1;
            for (int k = 0; k < q_ - 1; ++k) {
                exp_[k] = x;
                x = mul_poly(x, g);
            }
            break;
        }
    }
    if (q_ == 2) exp_[0] = 1;
    for (int k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
    for (int k = q_ - 1; k < 2 * (q_ - 1) + 1; ++k) exp_[k] = exp_[k - (q_ - 1)];
    for (int a = 1; a < q_; ++a)
        if (log_[a] < 0) fail(ErrorKind::Precondition, "modulus is not irreducible");
}

std::shared_ptr<const FiniteField> FiniteField::make(int p, int r) {
    if (!is_prime(p)) fail(ErrorKind::Precondition, "characteristic must be prime");
    if (r < 1) fail(ErrorKind::Precondition, "degree must be positive");
    if (r == 1) return std::shared_ptr<const FiniteField>(new FiniteField(p, {0, 1}));
    auto it = standard_moduli().find({p, r});
    if (it != standard_moduli().end()) return make(p, it->second);
    // Smallest (in base-p order of lower coefficients) primitive modulus.
    long count = 1;
    for (int i = 0; i < r; ++i) count *= p;
    for (long code = 1; code < count; ++code) {
        std::vector<int> f(r + 1, 0);
        long c = code;
        for (int i = 0; i < r; ++i) {
            f[i] = static_cast<int>(c % p);
            c /= p;
        }
        f[r] = 1;
        if (f[0] == 0 || !irreducible_mod_p(p, f)) continue;
        try {
            auto field = std::shared_ptr<const FiniteField>(new FiniteField(p, f));
            if (field->primitive() == field->gen()) return field;
        } catch (const Error&) {
        }
    }
    fail(ErrorKind::Unsupported, "no modulus found");
}

std::shared_ptr<const FiniteField> FiniteField::make(int p, std::vector<int> modulus) {
    if (!is_prime(p)) fail(ErrorKind::Precondition, "characteristic must be prime");
    for (int& c : modulus) c = mod(c, p);
    if (modulus.size() < 2 || modulus.back() != 1) fail(ErrorKind::Precondition, "modulus must be monic of positive degree");
    if (modulus.size() > 2 && !irreducible_mod_p(p, modulus))
        fail(ErrorKind::Precondition, "modulus is not irreducible");
    if (modulus.size() == 2) modulus = {0, 1};
    return std::shared_ptr<const FiniteField>(new FiniteField(p, std::move(modulus)));
}

std::shared_ptr<const FiniteField> FiniteField::make_q(int q) {
    for (int p = 2; p <= q; ++p) {
        if (!is_prime(p) || q % p != 0) continue;
        int r = 0;
        int x = q;
        while (x % p == 0) {
            x /= p;
            ++r;
        }
        if (x != 1) break;
        return make(p, r);
    }
    fail(ErrorKind::Precondition, "q must be a prime power");
}

Fq FiniteField::add_digits(Fq a, Fq b) const {
    int result = 0, scale = 1;
    for (int i = 0; i < r_; ++i) {
        int da = a % p_, db = b % p_;
        result += ((da + db) % p_) * scale;
        scale *= p_;
        a = static_cast<Fq>(a / p_);
        b = static_cast<Fq>(b / p_);
    }
    return static_cast<Fq>(result);
}

Fq FiniteField::mul_poly(Fq a, Fq b) const {
    if (r_ == 1) return static_cast<Fq>((static_cast<long>(a) * b) % p_);
    return from_coords(poly_mulmod(coords(a), coords(b), modulus_, p_));
}

Fq FiniteField::inv(Fq a) const {
    if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero in F_q");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Fq FiniteField::pow(Fq a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
}

Fq FiniteField::from_int(long n) const { return static_cast<Fq>(mod(n, p_)); }

Fq FiniteField::from_coords(std::span<const int> c) const {
    if (static_cast<int>(c.size()) > r_) {
        // reduce modulo the modulus
        std::vector<int> v(c.begin(), c.end());
        for (int& x : v) x = mod(x, p_);
        v = poly_rem(v, modulus_, p_);
        return from_coords(v);
    }
    int result = 0, scale = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        result += mod(c[i], p_) * scale;
        scale *= p_;
    }
    return static_cast<Fq>(result);
}

std::vector<int> FiniteField::coords(Fq a) const {
    std::vector<int> c(r_);
    for (int i = 0; i < r_; ++i) {
        c[i] = a % p_;
        a = static_cast<Fq>(a / p_);
    }
    return c;
}

std::string FiniteField::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (r_ > 1) {
        os << " = F_" << p_ << "[X]/(";
        bool first = true;
        for (int i = r_; i >= 0; --i) {
            if (modulus_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (modulus_[i] != 1 || i == 0) os << modulus_[i];
            if (i > 0) os << (modulus_[i] != 1 ? "*X" : "X");
            if (i > 1) os << "^" << i;
        }
        os << ")";
    }
    return os.str();
}

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
    if (small_->p() != big_->p() || big_->r() % small_->r() != 0)
        fail(ErrorKind::Precondition, "no embedding between these finite fields");
    // Image of the generator: a root of the small modulus in the big field.
    Fq image = 0;
    if (small_->r() > 1) {
        bool found = false;
        for (int c = 0; c < big_->q() && !found; ++c) {
            Fq acc = 0, pw = 1;
            for (int m : small_->modulus()) {
                acc = big_->add(acc, big_->mul(big_->from_int(m), pw));
                pw = big_->mul(pw, static_cast<Fq>(c));
            }
            if (acc == 0) {
                image = static_cast<Fq>(c);
                found = true;
            }
        }
        if (!found) fail(ErrorKind::Precondition, "embedding search failed");
    }
    map_.resize(small_->q());
    inverse_.assign(big_->q(), -1);
    for (int a = 0; a < small_->q(); ++a) {
        auto c = small_->coords(static_cast<Fq>(a));
        Fq acc = 0, pw = 1;
        for (int x : c) {
            acc = big_->add(acc, big_->mul(big_->from_int(x), pw));
            pw = big_->mul(pw, image);
        }
        map_[a] = acc;
        inverse_[acc] = a;
    }
}

bool FieldEmbedding::preimage(Fq a, Fq& out) const {
    if (inverse_[a] < 0) return false;
    out = static_cast<Fq>(inverse_[a]);
    return true;
}

}  // namespace lf
