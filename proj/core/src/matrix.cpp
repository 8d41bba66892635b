#include <qhd/matrix.hpp>

#include <utility>

namespace qhd {

auto zero_matrix(std::size_t rows, std::size_t cols) -> IntMatrix
{
    return IntMatrix(rows, std::vector<BigInt>(cols, 0));
}

auto identity_matrix(std::size_t n) -> IntMatrix
{
    auto m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

auto transpose(const IntMatrix & m) -> IntMatrix
{
    if (m.empty())
        return {};
    auto t = zero_matrix(m[0].size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

auto multiply(const IntMatrix & a, const IntMatrix & b) -> IntMatrix
{
    if (a.empty())
        return {};
    require(a[0].size() == b.size(), "matrix dimensions do not match");
    auto cols = b.empty() ? 0 : b[0].size();
    auto c = zero_matrix(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

auto determinant(IntMatrix m) -> BigInt
{
    auto n = m.size();
    if (n == 0)
        return 1;
    for (const auto & row : m)
        require(row.size() == n, "determinant of a non-square matrix");
    BigInt previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            auto p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
            m[i][k] = 0;
        }
        previous = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

auto leading_principal_minors(IntMatrix m) -> std::vector<BigInt>
{
    auto n = m.size();
    std::vector<BigInt> minors;
    BigInt previous = 1;
    for (std::size_t k = 0; k < n; ++k) {
        minors.push_back(m[k][k]);
        if (m[k][k] == 0)
            break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
            m[i][k] = 0;
        }
        previous = m[k][k];
    }
    return minors;
}

auto is_negative_definite(const IntMatrix & m) -> bool
{
    auto minors = leading_principal_minors(m);
    if (minors.size() != m.size())
        return false;
    for (std::size_t k = 0; k < minors.size(); ++k) {
        bool odd = (k % 2) == 0;
        if (odd ? minors[k] >= 0 : minors[k] <= 0)
            return false;
    }
    return true;
}

auto solve(const IntMatrix & m, const std::vector<Rational> & b) -> std::optional<std::vector<Rational>>
{
    auto n = m.size();
    require(b.size() == n, "right-hand side has the wrong length");
    RatMatrix a(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        require(m[i].size() == n, "solve needs a square matrix");
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = Rational(m[i][j]);
        a[i][n] = b[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto p = k;
        while (p < n && a[p][k] == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(a[k], a[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0)
                continue;
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j <= n; ++j)
                a[i][j] -= f * a[k][j];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n] / a[i][i];
    return x;
}

auto rank(const IntMatrix & m) -> std::size_t
{
    if (m.empty())
        return 0;
    RatMatrix a;
    for (const auto & row : m) {
        a.emplace_back();
        for (const auto & x : row)
            a.back().emplace_back(x);
    }
    auto rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        auto p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

auto integer_sqrt(const BigInt & n) -> BigInt
{
    require(n >= 0, "square root of a negative number");
    return boost::multiprecision::sqrt(n);
}

auto is_square(const BigInt & n) -> bool
{
    if (n < 0)
        return false;
    auto r = integer_sqrt(n);
    return r * r == n;
}

} // namespace qhd
