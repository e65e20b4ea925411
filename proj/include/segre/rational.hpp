#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "segre/common.hpp"

namespace segre {

using BigInt = boost::multiprecision::cpp_int;

inline std::uint64_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

// Canonical form: den > 0, gcd(num, den) = 1, zero is 0/1.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { canonicalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) fail(ErrorKind::DivisionByZero, "rational division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat operator-() const {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    Rat inv() const {
        if (num_ == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
        return Rat(den_, num_);
    }

    std::uint64_t height_bits() const {
        return std::max(bit_length(num_), bit_length(den_));
    }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

  private:
    void canonicalize() {
        if (den_ == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
        } else {
            BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
            if (g > 1) {
                num_ /= g;
                den_ /= g;
            }
        }
        const std::uint64_t bound = config::max_rational_bits().load();
        if (bit_length(num_) > bound || bit_length(den_) > bound)
            fail(ErrorKind::HeightExceeded,
                 "rational height exceeds " + std::to_string(bound) + " bits");
    }

    BigInt num_;
    BigInt den_;
};

// Field handle for Q.  random_height bounds |num| and den of sampled values.
class RationalField {
  public:
    using Elem = Rat;

    explicit RationalField(std::uint64_t random_height = 10) : height_(random_height) {}

    Elem zero() const { return Rat(); }
    Elem one() const { return Rat(1); }
    Elem from_int(long long v) const { return Rat(v); }

    Elem sample(Rng& rng) const {
        const std::uint64_t h = height_;
        long long n = static_cast<long long>(rng.bounded(2 * h + 1)) - static_cast<long long>(h);
        long long d = static_cast<long long>(rng.bounded(h)) + 1;
        return Rat(BigInt(n), BigInt(d));
    }

    static constexpr bool is_finite = false;
    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }
    std::string elem_str(const Elem& e) const { return e.str(); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }

  private:
    std::uint64_t height_;
};

}  // namespace segre
