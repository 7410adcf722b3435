#ifndef DESSIN_LAURENT_HPP
#define DESSIN_LAURENT_HPP

#include <stdexcept>
#include <vector>

#include "dessin/series.hpp"

namespace dessin {

// Tail series c_0 + c_1/z + c_2/z^2 + ... truncated at z^{-order}. The
// trusted order follows the same window arithmetic as TruncatedSeries.
template <class C>
class LaurentTail {
    using T = RingTraits<C>;

public:
    LaurentTail() : order_(-1) {}
    explicit LaurentTail(int order) : order_(order), c_(static_cast<size_t>(order) + 1, T::zero()) {}

    static LaurentTail constant(int order, const C& v) {
        LaurentTail t(order);
        t.c_[0] = v;
        return t;
    }

    int order() const { return order_; }

    const C& coeff(int k) const {
        if (k < 0 || k > order_) throw std::out_of_range("LaurentTail::coeff");
        return c_[static_cast<size_t>(k)];
    }
    void set_coeff(int k, const C& v) {
        if (k < 0) throw std::out_of_range("LaurentTail::set_coeff");
        if (k > order_) return;
        c_[static_cast<size_t>(k)] = v;
    }

    int first_nonzero() const {
        for (int k = 0; k <= order_; ++k)
            if (!T::is_zero(c_[static_cast<size_t>(k)])) return k;
        return TruncatedSeries<C>::kInf;
    }

    bool is_zero() const { return first_nonzero() > order_; }

    LaurentTail truncated(int order) const {
        LaurentTail r(std::min(order, order_));
        for (int k = 0; k <= r.order_; ++k) r.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
        return r;
    }

    friend LaurentTail operator+(const LaurentTail& a, const LaurentTail& b) {
        LaurentTail r(std::min(a.order_, b.order_));
        for (int k = 0; k <= r.order_; ++k)
            r.c_[static_cast<size_t>(k)] = a.c_[static_cast<size_t>(k)] + b.c_[static_cast<size_t>(k)];
        return r;
    }
    friend LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) {
        LaurentTail r(std::min(a.order_, b.order_));
        for (int k = 0; k <= r.order_; ++k)
            r.c_[static_cast<size_t>(k)] =
                a.c_[static_cast<size_t>(k)] + RingTraits<C>::scale(b.c_[static_cast<size_t>(k)], Rational(-1));
        return r;
    }
    LaurentTail operator-() const {
        LaurentTail r = *this;
        for (auto& v : r.c_) v = T::scale(v, Rational(-1));
        return r;
    }

    friend LaurentTail operator*(const LaurentTail& a, const LaurentTail& b) {
        long trusted = std::min<long>(static_cast<long>(a.order_) + b.first_nonzero(),
                                      static_cast<long>(b.order_) + a.first_nonzero());
        long cap = static_cast<long>(a.order_) + b.order_;
        int n = static_cast<int>(std::min(trusted, cap));
        LaurentTail r(std::max(n, -1));
        for (int i = 0; i <= a.order_; ++i) {
            if (T::is_zero(a.c_[static_cast<size_t>(i)])) continue;
            for (int j = 0; j <= b.order_ && i + j <= r.order_; ++j) {
                if (T::is_zero(b.c_[static_cast<size_t>(j)])) continue;
                r.c_[static_cast<size_t>(i + j)] =
                    r.c_[static_cast<size_t>(i + j)] + a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
            }
        }
        return r;
    }

    LaurentTail scaled(const C& v) const {
        LaurentTail r = *this;
        for (auto& x : r.c_) x = x * v;
        return r;
    }

    // Multiply by z^{-s}.
    LaurentTail shifted(int s) const {
        if (s < 0) throw std::invalid_argument("LaurentTail::shifted: negative shift");
        LaurentTail r(order_ + s);
        for (int k = 0; k <= order_; ++k) r.c_[static_cast<size_t>(k + s)] = c_[static_cast<size_t>(k)];
        return r;
    }

    friend bool operator==(const LaurentTail& a, const LaurentTail& b) {
        int n = std::min(a.order_, b.order_);
        for (int k = 0; k <= n; ++k)
            if (!(a.c_[static_cast<size_t>(k)] == b.c_[static_cast<size_t>(k)])) return false;
        return true;
    }

private:
    int order_;
    std::vector<C> c_;
};

// Plain 2x2 matrix over a commutative ring.
template <class T>
struct Mat2 {
    T a, b, c, d;

    Mat2() = default;
    Mat2(T a_, T b_, T c_, T d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 zero() {
        using R = RingTraits<T>;
        return Mat2(R::zero(), R::zero(), R::zero(), R::zero());
    }
    static Mat2 identity() {
        using R = RingTraits<T>;
        return Mat2(R::one(), R::zero(), R::zero(), R::one());
    }
    static Mat2 e11() {
        using R = RingTraits<T>;
        return Mat2(R::one(), R::zero(), R::zero(), R::zero());
    }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return Mat2(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        using R = RingTraits<T>;
        return x + Mat2(R::scale(y.a, Rational(-1)), R::scale(y.b, Rational(-1)),
                        R::scale(y.c, Rational(-1)), R::scale(y.d, Rational(-1)));
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                    x.c * y.b + x.d * y.d);
    }

    Mat2 scaled(const T& s) const { return Mat2(a * s, b * s, c * s, d * s); }

    T trace() const { return a + d; }
    T det() const {
        using R = RingTraits<T>;
        return a * d + R::scale(b * c, Rational(-1));
    }

    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

template <class T>
struct RingTraits<Mat2<T>> {
    static Mat2<T> zero() { return Mat2<T>::zero(); }
    static Mat2<T> one() { return Mat2<T>::identity(); }
    static bool is_zero(const Mat2<T>& m) {
        using R = RingTraits<T>;
        return R::is_zero(m.a) && R::is_zero(m.b) && R::is_zero(m.c) && R::is_zero(m.d);
    }
    static Mat2<T> scale(const Mat2<T>& m, const Rational& r) {
        using R = RingTraits<T>;
        return Mat2<T>(R::scale(m.a, r), R::scale(m.b, r), R::scale(m.c, r), R::scale(m.d, r));
    }
    static Mat2<T> embed(const Rational& r) { return scale(Mat2<T>::identity(), r); }
};

}  // namespace dessin

#endif
