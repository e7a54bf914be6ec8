#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "situwalk/errors.hpp"
#include "situwalk/text.hpp"

namespace situwalk {

/// Exact rational on int64, always normalized (gcd 1, positive denominator).
/// Supports and confidences are ratios of transaction counts, so thresholds
/// like minsup = 1/3 compare exactly instead of through float rounding.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t value) : num_(value), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw DomainError("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    /// "3/4", or just "3" when integral.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    /// Accepts "num/den", integers, and plain decimals ("0.8").
    static Rational parse(const std::string& text) {
        const std::string s = trim(text);
        if (s.empty()) throw ParseError("empty rational");
        try {
            if (const auto slash = s.find('/'); slash != std::string::npos)
                return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
            if (const auto dot = s.find('.'); dot != std::string::npos) {
                const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
                if (frac.empty() || frac.size() > 15 ||
                    frac.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError("bad rational: " + text);
                std::int64_t den = 1;
                for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
                const bool neg = s[0] == '-';
                const std::int64_t w = (whole.empty() || whole == "-" || whole == "+")
                                           ? 0
                                           : std::stoll(whole);
                const std::int64_t mag = (w < 0 ? -w : w) * den + std::stoll(frac);
                return {neg ? -mag : mag, den};
            }
            return {std::stoll(s), 1};
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad rational: " + text);
        }
    }

private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace situwalk
