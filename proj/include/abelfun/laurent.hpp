#pragma once

#include "abelfun/bigint.hpp"

#include <map>
#include <sstream>
#include <string>

namespace abelfun {

// Laurent polynomial over Z with exact coefficients, the carrier for all
// graded characters ch X = sum_n t^n dim X_n. Zero coefficients are never
// stored. Also doubles as a truncated power series via mul_truncated /
// truncated: a series is a LaurentPoly whose coefficients above the
// truncation order have been dropped.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly term(Int coeff, long exp) {
        LaurentPoly p;
        p.add_term(exp, std::move(coeff));
        return p;
    }
    static LaurentPoly one() { return term(1, 0); }

    // (1 - t)^n for n >= 0.
    static LaurentPoly one_minus_t_pow(long n) {
        LaurentPoly p;
        for (long k = 0; k <= n; ++k)
            p.add_term(k, ((k & 1) ? -1 : 1) * binomial(n, k));
        return p;
    }

    // (1 - t)^{-n} truncated to order N: sum_{j=0}^N C(n-1+j, j) t^j.
    static LaurentPoly geometric_pow(long n, long N) {
        LaurentPoly p;
        for (long j = 0; j <= N; ++j) p.add_term(j, binomial(n - 1 + j, j));
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    long min_exp() const { return c_.begin()->first; }
    long max_exp() const { return c_.rbegin()->first; }

    Int coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Int(0) : it->second;
    }

    const std::map<long, Int>& coeffs() const { return c_; }

    void add_term(long e, Int v) {
        if (v == 0) return;
        auto [it, inserted] = c_.emplace(e, std::move(v));
        if (!inserted) {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, v] : o.c_) add_term(e, v);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, v] : o.c_) add_term(e, -v);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, va] : a.c_)
            for (const auto& [eb, vb] : b.c_) r.add_term(ea + eb, va * vb);
        return r;
    }

    // Product with all exponents > N dropped. Correct for series both of
    // whose factors are themselves exact up to order N.
    static LaurentPoly mul_truncated(const LaurentPoly& a, const LaurentPoly& b, long N) {
        LaurentPoly r;
        for (const auto& [ea, va] : a.c_)
            for (const auto& [eb, vb] : b.c_)
                if (ea + eb <= N) r.add_term(ea + eb, va * vb);
        return r;
    }

    LaurentPoly shifted(long e) const {
        LaurentPoly r;
        for (const auto& [ex, v] : c_) r.c_.emplace(ex + e, v);
        return r;
    }

    LaurentPoly truncated(long N) const {
        LaurentPoly r;
        for (const auto& [e, v] : c_)
            if (e <= N) r.c_.emplace(e, v);
        return r;
    }

    LaurentPoly negated() const {
        LaurentPoly r;
        for (const auto& [e, v] : c_) r.c_.emplace(e, -v);
        return r;
    }

    Int eval_at_one() const {
        Int s = 0;
        for (const auto& [e, v] : c_) s += v;
        return s;
    }

    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, v] : c_) {
            Int a = v;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (a != 1 || e == 0) os << a.str();
            if (e != 0) {
                if (a != 1) os << "*";
                os << "t";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    std::map<long, Int> c_;
};

}  // namespace abelfun
