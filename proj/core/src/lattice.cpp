#include <qhd/lattice.hpp>

#include <algorithm>
#include <cstdlib>

namespace qhd {

auto intersection_matrix(const PlumbingTree & tree) -> IntersectionForm
{
    IntersectionForm form;
    auto n = tree.size();
    form.matrix = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        form.ids.push_back(tree.id(i));
        form.matrix[i][i] = tree.framing(i);
    }
    for (auto [a, b] : tree.edges()) {
        form.matrix[a][b] = 1;
        form.matrix[b][a] = 1;
    }
    form.negative_definite = is_negative_definite(form.matrix);
    return form;
}

auto determinant(const IntersectionForm & form) -> DeterminantInfo
{
    DeterminantInfo info;
    info.value = determinant(form.matrix);
    BigInt magnitude = abs(info.value);
    info.is_square = is_square(magnitude);
    if (info.is_square)
        info.root = integer_sqrt(magnitude);
    return info;
}

auto anticanonical(const IntersectionForm & form) -> Anticanonical
{
    auto n = form.size();
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = Rational(form.matrix[i][i] + 2);
    auto z = solve(form.matrix, rhs);
    if (! z)
        fail(ErrorKind::InvalidInput, "intersection form is singular; Z_K is undefined");

    Anticanonical result;
    result.zk = *z;
    result.zk_square = 0;
    for (std::size_t i = 0; i < n; ++i)
        result.zk_square += result.zk[i] * rhs[i];
    result.zk_test = result.zk_square + Rational(static_cast<long>(n)) == 0;
    return result;
}

namespace {

class EmbedSearch {
public:
    EmbedSearch(const IntersectionForm & form, const EmbedOptions & options) :
        _n(form.size()),
        _m(form.size() + options.extra_columns),
        _budget(options.node_budget)
    {
        _norm.resize(_n);
        _sum.resize(_n);
        _dot.assign(_n, std::vector<long>(_n, 0));
        for (std::size_t v = 0; v < _n; ++v) {
            _norm[v] = -form.matrix[v][v].convert_to<long>();
            _sum[v] = form.matrix[v][v].convert_to<long>() + 2;
            for (std::size_t w = 0; w < _n; ++w)
                _dot[v][w] = -form.matrix[v][w].convert_to<long>();
        }
        order_vertices(form);
        _rows.assign(_n, std::vector<int>(_m, 0));
        _suffix.assign(_n, std::vector<long>(_m + 1, 0));
        _tied.assign(_m > 0 ? _m - 1 : 0, true);
    }

    auto run() -> EmbedResult
    {
        EmbedResult result;
        bool ok = true;
        for (std::size_t v = 0; v < _n; ++v)
            ok = ok && _norm[v] >= 0;
        try {
            if (ok && place(0)) {
                result.status = EmbedStatus::Found;
                result.rows.assign(_n, {});
                for (std::size_t k = 0; k < _n; ++k)
                    result.rows[_order[k]] = _rows[k];
            }
        }
        catch (const BudgetHit &) {
            result.status = EmbedStatus::BudgetExceeded;
        }
        result.nodes = _nodes;
        return result;
    }

private:
    struct BudgetHit {};

    void order_vertices(const IntersectionForm & form)
    {
        std::vector<bool> done(_n, false), touched(_n, false);
        for (std::size_t k = 0; k < _n; ++k) {
            std::size_t best = _n;
            for (std::size_t v = 0; v < _n; ++v) {
                if (done[v])
                    continue;
                if (best == _n || std::pair{touched[v], _norm[v]} > std::pair{touched[best], _norm[best]})
                    best = v;
            }
            done[best] = true;
            _order.push_back(best);
            for (std::size_t w = 0; w < _n; ++w)
                if (w != best && form.matrix[best][w] != 0)
                    touched[w] = true;
        }
    }

    auto place(std::size_t k) -> bool
    {
        if (k == _n)
            return true;
        auto v = _order[k];
        _targets.resize(k);
        for (std::size_t p = 0; p < k; ++p)
            _targets[p] = _dot[v][_order[p]];
        _partial.assign(k, 0);
        return fill(k, 0, _norm[v], _sum[v]);
    }

    auto fill(std::size_t k, std::size_t j, long norm_left, long sum_left) -> bool
    {
        if (_budget != 0 && ++_nodes > _budget)
            throw BudgetHit{};
        if (_budget == 0)
            ++_nodes;
        if (j == _m) {
            if (norm_left != 0 || sum_left != 0)
                return false;
            for (std::size_t p = 0; p < k; ++p)
                if (_partial[p] != _targets[p])
                    return false;
            return commit(k);
        }

        auto remaining = static_cast<long>(_m - j - 1);
        int bound = 0;
        while (static_cast<long>(bound + 1) * (bound + 1) <= norm_left)
            ++bound;
        int upper = bound;
        if (j > 0 && _tied[j - 1])
            upper = std::min(upper, _rows[k][j - 1]);

        for (int x = upper; x >= -bound; --x) {
            long rn = norm_left - static_cast<long>(x) * x;
            long rs = sum_left - x;
            if (rs * rs > remaining * rn || ((rs - rn) % 2) != 0)
                continue;
            bool feasible = true;
            for (std::size_t p = 0; p < k && feasible; ++p) {
                long t = _targets[p] - _partial[p] - static_cast<long>(x) * _rows[p][j];
                feasible = t * t <= rn * _suffix[p][j + 1];
            }
            if (! feasible)
                continue;
            _rows[k][j] = x;
            for (std::size_t p = 0; p < k; ++p)
                _partial[p] += static_cast<long>(x) * _rows[p][j];
            bool found = fill(k, j + 1, rn, rs);
            for (std::size_t p = 0; p < k; ++p)
                _partial[p] -= static_cast<long>(x) * _rows[p][j];
            if (found)
                return true;
        }
        _rows[k][j] = 0;
        return false;
    }

    auto commit(std::size_t k) -> bool
    {
        for (std::size_t j = _m; j-- > 0;)
            _suffix[k][j] = _suffix[k][j + 1] + static_cast<long>(_rows[k][j]) * _rows[k][j];
        auto saved_tied = _tied;
        for (std::size_t j = 0; j + 1 < _m; ++j)
            _tied[j] = _tied[j] && _rows[k][j] == _rows[k][j + 1];
        auto saved_targets = _targets;
        auto saved_partial = _partial;
        if (place(k + 1))
            return true;
        _tied = std::move(saved_tied);
        _targets = std::move(saved_targets);
        _partial = std::move(saved_partial);
        return false;
    }

    std::size_t _n, _m;
    std::uint64_t _budget;
    std::uint64_t _nodes = 0;
    std::vector<long> _norm, _sum;
    std::vector<std::vector<long>> _dot;
    std::vector<std::size_t> _order;
    std::vector<std::vector<int>> _rows;
    std::vector<std::vector<long>> _suffix;
    std::vector<bool> _tied;
    std::vector<long> _targets, _partial;
};

} // namespace

auto diagonal_embed(const IntersectionForm & form, const EmbedOptions & options) -> EmbedResult
{
    if (form.size() == 0)
        return EmbedResult{EmbedStatus::Found, {}, 0};
    return EmbedSearch(form, options).run();
}

auto verify_embedding(const IntersectionForm & form, const std::vector<std::vector<int>> & rows) -> bool
{
    auto n = form.size();
    if (rows.size() != n)
        return false;
    for (std::size_t v = 0; v < n; ++v) {
        long sum = 0;
        for (auto x : rows[v])
            sum += x;
        if (BigInt(sum) != form.matrix[v][v] + 2)
            return false;
        for (std::size_t w = 0; w < n; ++w) {
            if (rows[w].size() != rows[v].size())
                return false;
            long dot = 0;
            for (std::size_t j = 0; j < rows[v].size(); ++j)
                dot += static_cast<long>(rows[v][j]) * rows[w][j];
            if (BigInt(-dot) != form.matrix[v][w])
                return false;
        }
    }
    return true;
}

} // namespace qhd
