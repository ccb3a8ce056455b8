#pragma once

#include <vector>

namespace wishart {

// Dense bivariate coefficient table sum_{k,j} c[k][j] x^k t^j.
// T is an exact ring (cpp_rational) or double.
template <typename T>
class BivariatePoly {
public:
    BivariatePoly() : nx_(0), nt_(0), c_(1) {}
    BivariatePoly(int nx, int nt)
        : nx_(nx), nt_(nt), c_(static_cast<size_t>(nx + 1) * (nt + 1)) {}

    int xdeg() const { return nx_; }
    int tdeg() const { return nt_; }

    T& at(int k, int j) { return c_[static_cast<size_t>(k) * (nt_ + 1) + j]; }
    const T& at(int k, int j) const { return c_[static_cast<size_t>(k) * (nt_ + 1) + j]; }

    T get(int k, int j) const {
        if (k < 0 || j < 0 || k > nx_ || j > nt_) return T(0);
        return at(k, j);
    }

    BivariatePoly dx() const {
        BivariatePoly r(nx_ > 0 ? nx_ - 1 : 0, nt_);
        for (int k = 1; k <= nx_; ++k)
            for (int j = 0; j <= nt_; ++j) r.at(k - 1, j) = at(k, j) * T(k);
        return r;
    }

    BivariatePoly dt() const {
        BivariatePoly r(nx_, nt_ > 0 ? nt_ - 1 : 0);
        for (int k = 0; k <= nx_; ++k)
            for (int j = 1; j <= nt_; ++j) r.at(k, j - 1) = at(k, j) * T(j);
        return r;
    }

    BivariatePoly mul_x() const {
        BivariatePoly r(nx_ + 1, nt_);
        for (int k = 0; k <= nx_; ++k)
            for (int j = 0; j <= nt_; ++j) r.at(k + 1, j) = at(k, j);
        return r;
    }

    BivariatePoly mul_t() const {
        BivariatePoly r(nx_, nt_ + 1);
        for (int k = 0; k <= nx_; ++k)
            for (int j = 0; j <= nt_; ++j) r.at(k, j + 1) = at(k, j);
        return r;
    }

    BivariatePoly scaled(const T& a) const {
        BivariatePoly r = *this;
        for (auto& v : r.c_) v = v * a;
        return r;
    }

    // substitute t -> a t (each t-level j picks up a^j)
    BivariatePoly t_scaled(const T& a) const {
        BivariatePoly r = *this;
        T p(1);
        for (int j = 0; j <= nt_; ++j) {
            for (int k = 0; k <= nx_; ++k) r.at(k, j) = r.at(k, j) * p;
            p = p * a;
        }
        return r;
    }

    friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly r(a.nx_ > b.nx_ ? a.nx_ : b.nx_, a.nt_ > b.nt_ ? a.nt_ : b.nt_);
        for (int k = 0; k <= r.nx_; ++k)
            for (int j = 0; j <= r.nt_; ++j) r.at(k, j) = a.get(k, j) + b.get(k, j);
        return r;
    }

    friend BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly r(a.nx_ > b.nx_ ? a.nx_ : b.nx_, a.nt_ > b.nt_ ? a.nt_ : b.nt_);
        for (int k = 0; k <= r.nx_; ++k)
            for (int j = 0; j <= r.nt_; ++j) r.at(k, j) = a.get(k, j) - b.get(k, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!(v == T(0))) return false;
        return true;
    }

    // Horner evaluation, x fastest
    template <typename X, typename TT>
    auto eval(const X& x, const TT& t) const {
        using R = decltype(T() * x * t);
        R total(0);
        for (int k = nx_; k >= 0; --k) {
            R row(0);
            for (int j = nt_; j >= 0; --j) row = row * t + R(at(k, j));
            total = total * x + row;
        }
        return total;
    }

private:
    int nx_, nt_;
    std::vector<T> c_;
};

} // namespace wishart
