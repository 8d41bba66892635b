#include <qhd/homology.hpp>

#include <algorithm>
#include <numeric>
#include <optional>

namespace qhd {

namespace {

auto abs_of(const BigInt & x) -> BigInt { return x < 0 ? BigInt(-x) : x; }

/// Floor division for signed big integers.
auto floor_div(const BigInt & a, const BigInt & b) -> BigInt
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

/// Quotient rounded to the nearest integer, so the remainder is at most |b| / 2.
auto nearest_div(const BigInt & a, const BigInt & b) -> BigInt
{
    BigInt q = a / b;
    BigInt r = a - q * b;
    if (2 * abs_of(r) > abs_of(b))
        q += ((r < 0) == (b < 0)) ? 1 : -1;
    return q;
}

void add_row(IntMatrix & m, std::size_t target, std::size_t source, const BigInt & factor)
{
    for (std::size_t j = 0; j < m[target].size(); ++j)
        m[target][j] += factor * m[source][j];
}

void add_col(IntMatrix & m, std::size_t target, std::size_t source, const BigInt & factor)
{
    for (auto & row : m)
        row[target] += factor * row[source];
}

void swap_cols(IntMatrix & m, std::size_t a, std::size_t b)
{
    for (auto & row : m)
        std::swap(row[a], row[b]);
}

} // namespace

auto smith_form(const IntMatrix & a) -> SmithForm
{
    auto rows = a.size();
    auto cols = rows == 0 ? 0 : a[0].size();
    IntMatrix d = a;
    SmithForm s;
    s.u = identity_matrix(rows);
    s.v = identity_matrix(cols);

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest non-zero entry of the remaining block
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d[i][j] != 0 && (! pivot || abs_of(d[i][j]) < abs_of(d[pivot->first][pivot->second])))
                    pivot = {i, j};
        if (! pivot)
            break;
        std::swap(d[t], d[pivot->first]);
        std::swap(s.u[t], s.u[pivot->first]);
        swap_cols(d, t, pivot->second);
        swap_cols(s.v, t, pivot->second);

        for (;;) {
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d[i][t] != 0) {
                    BigInt q = nearest_div(d[i][t], d[t][t]);
                    add_row(d, i, t, -q);
                    add_row(s.u, i, t, -q);
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (d[t][j] != 0) {
                    BigInt q = nearest_div(d[t][j], d[t][t]);
                    add_col(d, j, t, -q);
                    add_col(s.v, j, t, -q);
                }
            // remainders left in row or column t: move the smallest one to the pivot
            std::size_t best_i = t, best_j = t;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d[i][t] != 0 && abs_of(d[i][t]) < abs_of(d[best_i][best_j]))
                    best_i = i, best_j = t;
            for (std::size_t j = t + 1; j < cols; ++j)
                if (d[t][j] != 0 && abs_of(d[t][j]) < abs_of(d[best_i][best_j]))
                    best_i = t, best_j = j;
            if (best_i != t) {
                std::swap(d[t], d[best_i]);
                std::swap(s.u[t], s.u[best_i]);
                continue;
            }
            if (best_j != t) {
                swap_cols(d, t, best_j);
                swap_cols(s.v, t, best_j);
                continue;
            }
            // the pivot must divide the rest of the block
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < rows && ! offender; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        offender = i;
                        break;
                    }
            if (! offender)
                break;
            add_row(d, t, *offender, 1);
            add_row(s.u, t, *offender, 1);
        }
        if (d[t][t] < 0) {
            for (auto & x : d[t])
                x = -x;
            for (auto & x : s.u[t])
                x = -x;
        }
        s.divisors.push_back(d[t][t]);
        ++t;
    }
    s.rank = t;
    return s;
}

auto integer_kernel(const IntMatrix & a) -> std::vector<std::vector<BigInt>>
{
    auto cols = a.empty() ? 0 : a[0].size();
    auto s = smith_form(a);
    std::vector<std::vector<BigInt>> basis;
    for (auto j = s.rank; j < cols; ++j) {
        std::vector<BigInt> x(cols);
        for (std::size_t i = 0; i < cols; ++i)
            x[i] = s.v[i][j];
        basis.push_back(std::move(x));
    }
    return basis;
}

namespace {

auto dot(const std::vector<BigInt> & a, const std::vector<BigInt> & b) -> BigInt
{
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

auto round_rational(const Rational & r) -> BigInt
{
    // nearest integer, halves rounded down
    Rational shifted = r + Rational(1, 2);
    BigInt n = boost::multiprecision::numerator(shifted);
    BigInt d = boost::multiprecision::denominator(shifted);
    BigInt q = floor_div(n, d);
    if (Rational(q) == shifted)
        q -= 1;
    return q;
}

} // namespace

auto lll_reduce(std::vector<std::vector<BigInt>> b) -> std::vector<std::vector<BigInt>>
{
    auto n = b.size();
    if (n == 0)
        return b;
    auto dim = b[0].size();
    std::vector<std::vector<Rational>> star(n, std::vector<Rational>(dim));
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    std::vector<Rational> norm(n);

    auto gram_schmidt = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < dim; ++k)
                star[i][k] = Rational(b[i][k]);
            for (std::size_t j = 0; j < i; ++j) {
                Rational num = 0;
                for (std::size_t k = 0; k < dim; ++k)
                    num += Rational(b[i][k]) * star[j][k];
                mu[i][j] = norm[j] == 0 ? Rational(0) : num / norm[j];
                for (std::size_t k = 0; k < dim; ++k)
                    star[i][k] -= mu[i][j] * star[j][k];
            }
            norm[i] = 0;
            for (std::size_t k = 0; k < dim; ++k)
                norm[i] += star[i][k] * star[i][k];
        }
    };

    gram_schmidt();
    std::size_t k = 1;
    const Rational delta(3, 4);
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            auto q = round_rational(mu[k][j]);
            if (q != 0) {
                for (std::size_t t = 0; t < dim; ++t)
                    b[k][t] -= q * b[j][t];
                gram_schmidt();
            }
        }
        if (norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
            ++k;
        }
        else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

auto fiber_invariants(const Configuration & config) -> FiberInvariants
{
    auto inc = incidence_matrix(config);
    IntMatrix a;
    for (const auto & row : inc)
        a.emplace_back(row.begin(), row.end());
    auto points = config.points.size();
    if (a.empty())
        a = IntMatrix{};

    FiberInvariants f;
    auto s = smith_form(a);
    f.rank = s.rank;
    f.mu = static_cast<long>(points) - static_cast<long>(s.rank);
    for (const auto & d : s.divisors)
        if (d > 1)
            f.h1_torsion.push_back(d);
    f.h1_free_rank = config.curves.size() - s.rank;

    std::vector<std::vector<BigInt>> basis;
    if (a.empty()) {
        for (std::size_t i = 0; i < points; ++i) {
            std::vector<BigInt> e(points, 0);
            e[i] = 1;
            basis.push_back(std::move(e));
        }
    }
    else {
        basis = integer_kernel(a);
    }
    basis = lll_reduce(std::move(basis));
    for (auto & x : basis) {
        auto first = std::find_if(x.begin(), x.end(), [](const BigInt & v) { return v != 0; });
        if (first != x.end() && *first < 0)
            for (auto & v : x)
                v = -v;
    }
    f.kernel_basis = basis;
    auto k = basis.size();
    f.restricted_form = zero_matrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            f.restricted_form[i][j] = -dot(basis[i], basis[j]);
        f.canonical_pairing.push_back(-std::accumulate(basis[i].begin(), basis[i].end(), BigInt(0)));
    }
    return f;
}

auto zk_via_projection(const Configuration & config) -> Rational
{
    auto f = fiber_invariants(config);
    auto k = f.kernel_basis.size();
    if (k == 0)
        return 0;
    IntMatrix gram = zero_matrix(k, k);
    std::vector<Rational> bk(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            gram[i][j] = dot(f.kernel_basis[i], f.kernel_basis[j]);
        bk[i] = Rational(std::accumulate(f.kernel_basis[i].begin(), f.kernel_basis[i].end(), BigInt(0)));
    }
    auto coeff = solve(gram, bk);
    if (! coeff)
        fail(ErrorKind::Inconsistent, "kernel basis is degenerate");
    Rational square = 0;
    for (std::size_t i = 0; i < k; ++i)
        square += (*coeff)[i] * bk[i];
    return -square;
}

auto qhd_det_check(const Configuration & config, const IntersectionForm & form) -> bool
{
    require(config.points.size() == config.curves.size(), "qhd_det_check needs mu = 0 (square incidence matrix)");
    auto inc = incidence_matrix(config);
    IntMatrix a;
    for (const auto & row : inc)
        a.emplace_back(row.begin(), row.end());
    auto det_i = determinant(a);
    require(det_i != 0, "incidence matrix is singular");
    auto det_q = determinant(form.matrix);
    return abs_of(det_i * det_i) == abs_of(det_q);
}

namespace {

class CongruenceSearch {
public:
    CongruenceSearch(const IntMatrix & a, const IntMatrix & b, int bound) :
        _a(a),
        _b(b),
        _n(a.size())
    {
        std::vector<BigInt> x(_n, -bound);
        while (true) {
            if (std::any_of(x.begin(), x.end(), [](const BigInt & v) { return v != 0; }))
                _vectors.push_back(x);
            std::size_t i = 0;
            while (i < _n && x[i] == bound)
                x[i++] = -bound;
            if (i == _n)
                break;
            x[i] += 1;
        }
    }

    auto run() -> std::optional<IntMatrix>
    {
        _chosen.clear();
        if (extend())
            return _result;
        return std::nullopt;
    }

private:
    auto form(const std::vector<BigInt> & x, const std::vector<BigInt> & y) const -> BigInt
    {
        BigInt s = 0;
        for (std::size_t i = 0; i < _n; ++i)
            for (std::size_t j = 0; j < _n; ++j)
                s += x[i] * _a[i][j] * y[j];
        return s;
    }

    auto extend() -> bool
    {
        auto k = _chosen.size();
        if (k == _n) {
            IntMatrix u = zero_matrix(_n, _n);
            for (std::size_t c = 0; c < _n; ++c)
                for (std::size_t r = 0; r < _n; ++r)
                    u[r][c] = _chosen[c][r];
            auto d = determinant(u);
            if (d == 1 || d == -1) {
                _result = u;
                return true;
            }
            return false;
        }
        for (const auto & x : _vectors) {
            if (form(x, x) != _b[k][k])
                continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j)
                ok = form(_chosen[j], x) == _b[j][k];
            if (! ok)
                continue;
            _chosen.push_back(x);
            if (extend())
                return true;
            _chosen.pop_back();
        }
        return false;
    }

    const IntMatrix & _a;
    const IntMatrix & _b;
    std::size_t _n;
    std::vector<std::vector<BigInt>> _vectors;
    std::vector<std::vector<BigInt>> _chosen;
    IntMatrix _result;
};

} // namespace

auto congruence(const IntMatrix & a, const IntMatrix & b, int bound) -> CongruenceReport
{
    CongruenceReport report;
    if (a.size() != b.size())
        return report;
    report.invariants_match = determinant(a) == determinant(b) && smith_form(a).divisors == smith_form(b).divisors;
    if (! report.invariants_match || a.size() > 4)
        return report;
    report.searched = true;
    if (a.empty()) {
        report.transform = IntMatrix{};
        return report;
    }
    report.transform = CongruenceSearch(a, b, bound).run();
    return report;
}

} // namespace qhd
