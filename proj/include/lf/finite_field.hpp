#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lf {

// An element of F_q is stored as the integer sum c_i p^i of its coordinates
// c_i in F_p with respect to the power basis 1, X, ..., X^{r-1}.
using Fq = std::uint16_t;

class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
    // Uses the built-in standard modulus for (p, r), or a search for the
    // smallest primitive one when the table has no entry.
    static std::shared_ptr<const FiniteField> make(int p, int r = 1);
    // Monic modulus, coefficients lowest degree first, degree r.
    static std::shared_ptr<const FiniteField> make(int p, std::vector<int> modulus);
    static std::shared_ptr<const FiniteField> make_q(int q);

    int p() const { return p_; }
    int r() const { return r_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    Fq add(Fq a, Fq b) const {
        if (p_ == 2) return static_cast<Fq>(a ^ b);
        if (!add_.empty()) return add_[static_cast<std::size_t>(a) * q_ + b];
        return add_digits(a, b);
    }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq sub(Fq a, Fq b) const { return add(a, neg_[b]); }
    Fq mul(Fq a, Fq b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::uint64_t e) const;
    // Frobenius x -> x^p.
    Fq frob(Fq a) const { return pow(a, static_cast<std::uint64_t>(p_)); }
    // Inverse Frobenius x -> x^{1/p}; exists since F_q is perfect.
    Fq root_p(Fq a) const { return pow(a, static_cast<std::uint64_t>(q_ / p_)); }

    Fq from_int(long n) const;
    Fq from_coords(std::span<const int> c) const;
    std::vector<int> coords(Fq a) const;
    Fq primitive() const { return exp_[1]; }
    // The class of X (for r = 1 this is the primitive root).
    Fq gen() const { return r_ == 1 ? exp_[1] : static_cast<Fq>(p_); }
    int log(Fq a) const { return log_[a]; }
    Fq exp(int k) const { return exp_[((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }

    bool same_as(const FiniteField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }
    std::string describe() const;

private:
    FiniteField(int p, std::vector<int> modulus);
    Fq add_digits(Fq a, Fq b) const;
    Fq mul_poly(Fq a, Fq b) const;

    int p_ = 0, r_ = 0, q_ = 0;
    std::vector<int> modulus_;
    std::vector<Fq> exp_;  // length 2(q-1)
    std::vector<int> log_;
    std::vector<Fq> neg_;
    std::vector<Fq> add_;  // full table for small odd q
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// Irreducibility of a monic polynomial over F_p (coefficients mod p, low first).
bool irreducible_mod_p(int p, const std::vector<int>& f);

// A field embedding F_small -> F_big given by the image of the generator.
class FieldEmbedding {
public:
    FieldEmbedding() = default;
    FieldEmbedding(FieldPtr small, FieldPtr big);
    Fq operator()(Fq a) const { return map_[a]; }
    // Inverse on the image; returns false if a is not in the image.
    bool preimage(Fq a, Fq& out) const;
    const FieldPtr& small() const { return small_; }
    const FieldPtr& big() const { return big_; }

private:
    FieldPtr small_, big_;
    std::vector<Fq> map_;
    std::vector<int> inverse_;
};

bool is_prime(int n);

}  // namespace lf
