#include "sslab/laurent.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace sslab {

LaurentPoly::LaurentPoly(Map coeffs) {
    for (auto& [e, c] : coeffs) insert(e, c);
}

void LaurentPoly::insert(int e, Complex c) {
    if (c == Complex(0.0, 0.0)) return;
    c_[e] = c;
}

LaurentPoly LaurentPoly::constant(Complex c) { return monomial(0, c); }

LaurentPoly LaurentPoly::monomial(int e, Complex c) {
    LaurentPoly p;
    p.insert(e, c);
    return p;
}

LaurentPoly LaurentPoly::from_dense(const std::vector<Complex>& c) {
    LaurentPoly p;
    for (size_t i = 0; i < c.size(); ++i) p.insert(static_cast<int>(i), c[i]);
    return p;
}

bool LaurentPoly::is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

int LaurentPoly::min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
int LaurentPoly::max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

Complex LaurentPoly::coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Complex(0.0, 0.0) : it->second;
}

double LaurentPoly::max_abs() const {
    double m = 0.0;
    for (auto& [e, c] : c_) m = std::max(m, std::abs(c));
    return m;
}

Complex LaurentPoly::operator()(Complex z) const {
    if (c_.empty()) return 0.0;
    int lo = min_exp(), hi = max_exp();
    Complex acc = 0.0;
    for (int e = hi; e >= lo; --e) acc = acc * z + coeff(e);
    if (lo != 0) acc *= std::pow(z, lo);
    return acc;
}

double LaurentPoly::magnitude_at(Complex z) const {
    double r = std::abs(z), s = 0.0;
    for (auto& [e, c] : c_) s += std::abs(c) * std::pow(r, e);
    return s;
}

LaurentPoly LaurentPoly::derivative() const {
    LaurentPoly d;
    for (auto& [e, c] : c_)
        if (e != 0) d.insert(e - 1, c * static_cast<double>(e));
    return d;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly p;
    for (auto& [e, c] : c_) p.c_[e + k] = c;
    return p;
}

LaurentPoly LaurentPoly::reflected() const {
    LaurentPoly p;
    for (auto& [e, c] : c_) p.c_[-e] = c;
    return p;
}

LaurentPoly LaurentPoly::conj_coeffs() const {
    LaurentPoly p;
    for (auto& [e, c] : c_) p.c_[e] = std::conj(c);
    return p;
}

LaurentPoly LaurentPoly::without_constant() const {
    LaurentPoly p = *this;
    p.c_.erase(0);
    return p;
}

LaurentPoly LaurentPoly::pruned(double rel) const {
    double cut = rel * max_abs();
    LaurentPoly p;
    for (auto& [e, c] : c_)
        if (std::abs(c) > cut) p.c_[e] = c;
    return p;
}

std::vector<Complex> LaurentPoly::dense() const {
    std::vector<Complex> v(static_cast<size_t>(std::max(0, max_exp())) + 1, 0.0);
    for (auto& [e, c] : c_)
        if (e >= 0) v[static_cast<size_t>(e)] = c;
    return v;
}

int LaurentPoly::degree() const { return c_.empty() ? 0 : max_exp(); }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [e, c] : o.c_) {
        Complex v = coeff(e) + c;
        if (v == Complex(0.0, 0.0))
            c_.erase(e);
        else
            c_[e] = v;
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(Complex s) {
    if (s == Complex(0.0, 0.0)) {
        c_.clear();
        return *this;
    }
    for (auto& [e, c] : c_) c *= s;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (auto& [ea, ca] : a.c_)
        for (auto& [eb, cb] : b.c_) p.c_[ea + eb] += ca * cb;
    LaurentPoly q;
    for (auto& [e, c] : p.c_) q.insert(e, c);
    return q;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    auto key = [](const LaurentPoly& p) {
        std::vector<std::tuple<int, double, double>> k;
        for (auto& [e, c] : p.c_) k.emplace_back(e, c.real(), c.imag());
        return k;
    };
    return key(a) < key(b);
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

std::vector<Complex> dense_derivative(const std::vector<Complex>& c) {
    std::vector<Complex> d(c.size() > 1 ? c.size() - 1 : 0);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

std::vector<Complex> companion_roots(std::vector<Complex> c) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return {};
    Complex lead = c.back();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Complex> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return r;
}

}  // namespace

std::vector<std::pair<Complex, int>> root_clusters(const LaurentPoly& p0) {
    std::vector<std::pair<Complex, int>> out;
    LaurentPoly p = p0.pruned(1e-14);
    if (p.is_zero()) return out;
    int z0 = p.min_exp();
    if (z0 > 0) out.emplace_back(Complex(0.0, 0.0), z0);
    std::vector<Complex> c = p.shifted(-z0).dense();
    std::vector<Complex> roots = companion_roots(c);
    std::vector<bool> used(roots.size(), false);
    // A perturbed root of multiplicity m spreads to radius ~ eps^(1/m), so the
    // merge tolerance grows with the candidate multiplicity.
    auto tol = [](int m, Complex mu) { return std::max(1e-5, 4.0 * std::pow(1e-15, 1.0 / m)) * (1.0 + std::abs(mu)); };
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> near;
        for (size_t j = 0; j < roots.size(); ++j)
            if (!used[j]) near.push_back(j);
        std::sort(near.begin(), near.end(), [&](size_t a, size_t b) {
            return std::abs(roots[a] - roots[i]) < std::abs(roots[b] - roots[i]);
        });
        int m = 1;
        Complex sum = roots[i];
        for (int M = static_cast<int>(std::min<size_t>(near.size(), 16)); M >= 2; --M) {
            Complex mu = 0.0;
            for (int k = 0; k < M; ++k) mu += roots[near[k]];
            mu /= static_cast<double>(M);
            double radius = 0.0;
            for (int k = 0; k < M; ++k) radius = std::max(radius, std::abs(roots[near[k]] - mu));
            double t = tol(M, mu);
            if (radius > t) continue;
            if (M < static_cast<int>(near.size()) && std::abs(roots[near[M]] - mu) <= t) continue;
            m = M;
            sum = mu * static_cast<double>(M);
            break;
        }
        for (int k = 0; k < m; ++k) used[near[k]] = true;
        used[i] = true;
        // A root of multiplicity m is a simple root of the (m-1)-th derivative.
        std::vector<Complex> q = c;
        for (int k = 1; k < m; ++k) q = dense_derivative(q);
        std::vector<Complex> dq = dense_derivative(q);
        Complex r = sum / static_cast<double>(m);
        for (int it = 0; it < 4; ++it) {
            Complex d = horner(dq, r);
            if (std::abs(d) == 0.0) break;
            Complex step = horner(q, r) / d;
            if (!(std::abs(step) < 1e-4 * (1.0 + std::abs(r)))) break;
            r -= step;
        }
        out.emplace_back(r, m);
    }
    return out;
}

LaurentPoly deflate(const LaurentPoly& p, Complex r) {
    std::vector<Complex> c = p.dense();
    if (c.size() < 2) return LaurentPoly();
    std::vector<Complex> q(c.size() - 1);
    Complex acc = 0.0;
    for (size_t i = c.size(); i-- > 1;) {
        acc = acc * r + c[i];
        q[i - 1] = acc;
    }
    return LaurentPoly::from_dense(q);
}

}  // namespace sslab
