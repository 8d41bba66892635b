#include <qhd/solver.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

namespace qhd {

auto to_string(SolveStatus status) -> std::string
{
    switch (status) {
    case SolveStatus::Found: return "found";
    case SolveStatus::NoSolution: return "none";
    case SolveStatus::Timeout: return "timeout";
    }
    return "?";
}

auto validate(const Configuration & config, const SandwichPresentation & presentation) -> ValidationReport
{
    auto n = presentation.curves.size();
    if (config.curves.size() != n)
        fail(ErrorKind::InvalidInput, "configuration has " + std::to_string(config.curves.size())
                + " curves but the presentation has " + std::to_string(n));

    ValidationReport report;
    report.mu = config.mu();
    auto bad = [&](std::string message) { report.violations.push_back(std::move(message)); };

    for (std::size_t i = 0; i < n; ++i) {
        const auto & row = config.curves[i].row;
        const auto & want = presentation.curves[i];
        auto name = "curve " + std::to_string(i) + (want.label.empty() ? "" : " (" + want.label + ")");
        if (row.size() != config.points.size()) {
            bad(name + ": row length differs from the point count");
            continue;
        }
        if (! config.curves[i].vertex.empty() && config.curves[i].vertex != want.vertex)
            bad(name + ": sits on '" + config.curves[i].vertex + "', expected '" + want.vertex + "'");
        long total = 0;
        int doubles = 0;
        bool pattern_ok = true;
        for (auto m : row) {
            total += m;
            doubles += m == 2;
            pattern_ok = pattern_ok && m >= 0 && m <= (want.kind == BranchKind::Cusp ? 2 : 1);
        }
        if (want.kind == BranchKind::Cusp && doubles != 1)
            pattern_ok = false;
        if (! pattern_ok)
            bad(name + (want.kind == BranchKind::Cusp ? ": needs exactly one double point, other multiplicities 0/1"
                                                      : ": multiplicities must be 0 or 1"));
        if (total != want.size)
            bad(name + ": total multiplicity " + std::to_string(total) + ", expected " + std::to_string(want.size));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (config.curves[i].row.size() != config.points.size()
                || config.curves[j].row.size() != config.points.size())
                continue;
            auto d = pairing(config.curves[i].row, config.curves[j].row);
            if (d != presentation.gram[i][j])
                bad("curves " + std::to_string(i) + "," + std::to_string(j) + " meet " + std::to_string(d)
                    + " times, expected " + std::to_string(presentation.gram[i][j]));
        }
    if (report.violations.empty())
        report.free_points = free_points(config);
    report.valid = report.violations.empty();
    return report;
}

auto labeled_multiplicity(const Configuration & config) -> BigInt
{
    std::map<std::vector<int>, int> columns;
    for (std::size_t p = 0; p < config.points.size(); ++p) {
        std::vector<int> column;
        for (const auto & c : config.curves)
            column.push_back(c.row[p]);
        ++columns[column];
    }
    auto factorial = [](long k) {
        BigInt f = 1;
        for (long i = 2; i <= k; ++i)
            f *= i;
        return f;
    };
    BigInt result = factorial(static_cast<long>(config.points.size()));
    for (const auto & [column, count] : columns)
        result /= factorial(count);
    return result;
}

namespace {

class Search {
public:
    Search(const SandwichPresentation & presentation, const SolveMode & mode, std::size_t points) :
        _presentation(presentation),
        _mode(mode),
        _rows(presentation.curves.size()),
        _cols(points),
        _start(std::chrono::steady_clock::now())
    {
        _order.resize(_rows);
        std::iota(_order.begin(), _order.end(), 0);
        std::stable_sort(_order.begin(), _order.end(), [&](auto a, auto b) {
            return presentation.curves[a].size > presentation.curves[b].size;
        });
        for (std::size_t r = 0; r < _rows; ++r) {
            const auto & c = presentation.curves[_order[r]];
            _size.push_back(c.size);
            _cusp.push_back(c.kind == BranchKind::Cusp);
        }
        _target.assign(_rows, std::vector<long>(_rows, 0));
        for (std::size_t r = 0; r < _rows; ++r)
            for (std::size_t s = 0; s < _rows; ++s)
                _target[r][s] = presentation.gram[_order[r]][_order[s]];

        _twin.assign(_rows, _rows);
        if (mode.emit == EmitMode::First)
            for (std::size_t r = 0; r < _rows; ++r)
                for (std::size_t s = r; s-- > 0;)
                    if (interchangeable(r, s)) {
                        _twin[r] = s;
                        break;
                    }

        _remaining_after.assign(_rows + 1, 0);
        for (std::size_t r = _rows; r-- > 0;)
            _remaining_after[r] = _remaining_after[r + 1] + _size[r];

        _m.assign(_rows, std::vector<int>(_cols, 0));
        _suffix.assign(_rows, std::vector<long>(_cols + 1, 0));
        _tied.assign(_cols > 0 ? _cols - 1 : 0, true);
        _used.assign(_cols, false);
    }

    struct Stop {};

    void run(SolveResult & result)
    {
        _result = &result;
        if (_rows == 0) {
            if (_cols == 0)
                record();
            return;
        }
        row(0);
    }

    [[nodiscard]] auto nodes() const -> std::uint64_t { return _nodes; }

private:
    auto interchangeable(std::size_t r, std::size_t s) const -> bool
    {
        if (_size[r] != _size[s] || _cusp[r] != _cusp[s])
            return false;
        for (std::size_t k = 0; k < _rows; ++k)
            if (k != r && k != s && _target[r][k] != _target[s][k])
                return false;
        return true;
    }

    void tick()
    {
        ++_nodes;
        if (_mode.node_budget != 0 && _nodes > _mode.node_budget)
            throw Stop{};
        if (_mode.timeout_seconds > 0 && (_nodes & 0xfff) == 0) {
            std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - _start;
            if (elapsed.count() > _mode.timeout_seconds)
                throw Stop{};
        }
    }

    void row(std::size_t r)
    {
        if (r == _rows) {
            if (_cols == 0 || _used[_cols - 1])
                record();
            return;
        }
        _need.assign(r, 0);
        for (std::size_t s = 0; s < r; ++s)
            _need[s] = _target[r][s];
        _row_equal_twin = _twin[r] < _rows;
        cell(r, 0, _size[r], ! _cusp[r]);
    }

    void cell(std::size_t r, std::size_t c, long left, bool double_done)
    {
        tick();
        if (c == _cols) {
            if (left != 0 || ! double_done)
                return;
            for (std::size_t s = 0; s < r; ++s)
                if (_need[s] != 0)
                    return;
            commit(r);
            return;
        }

        auto columns_left = static_cast<long>(_cols - c);
        int upper = double_done ? 1 : 2;
        if (c > 0 && _tied[c - 1])
            upper = std::min(upper, _m[r][c - 1]);
        bool twin_bound = _row_equal_twin;
        if (twin_bound)
            upper = std::min(upper, _m[_twin[r]][c]);

        for (int x = upper; x >= 0; --x) {
            long rest = left - x;
            bool done = double_done || x == 2;
            long cap = (columns_left - 1) + (done ? 0 : 1);
            if (rest < 0 || rest > cap || (! done && rest < 2))
                continue;
            bool ok = true;
            if (x > 0)
                for (std::size_t s = 0; s < r && ok; ++s)
                    ok = _need[s] >= static_cast<long>(x) * _m[s][c];
            if (! ok)
                continue;
            for (std::size_t s = 0; s < r; ++s)
                _need[s] -= static_cast<long>(x) * _m[s][c];
            for (std::size_t s = 0; s < r && ok; ++s)
                ok = _need[s] <= (done ? 1 : 2) * _suffix[s][c + 1];
            if (ok) {
                _m[r][c] = x;
                bool saved_equal = _row_equal_twin;
                if (twin_bound && x < _m[_twin[r]][c])
                    _row_equal_twin = false;
                cell(r, c + 1, rest, done);
                _row_equal_twin = saved_equal;
                _m[r][c] = 0;
            }
            for (std::size_t s = 0; s < r; ++s)
                _need[s] += static_cast<long>(x) * _m[s][c];
        }
    }

    void commit(std::size_t r)
    {
        for (std::size_t c = _cols; c-- > 0;)
            _suffix[r][c] = _suffix[r][c + 1] + _m[r][c];
        auto saved_tied = _tied;
        auto saved_used = _used;
        auto saved_need = _need;
        auto saved_equal = _row_equal_twin;
        for (std::size_t c = 0; c + 1 < _cols; ++c)
            _tied[c] = _tied[c] && _m[r][c] == _m[r][c + 1];
        long unused = 0;
        for (std::size_t c = 0; c < _cols; ++c) {
            _used[c] = _used[c] || _m[r][c] != 0;
            unused += ! _used[c];
        }
        if (unused <= _remaining_after[r + 1])
            row(r + 1);
        _tied = std::move(saved_tied);
        _used = std::move(saved_used);
        _need = std::move(saved_need);
        _row_equal_twin = saved_equal;
    }

    void record()
    {
        Configuration config;
        for (std::size_t p = 0; p < _cols; ++p)
            config.points.push_back("p" + std::to_string(p + 1));
        config.curves.resize(_rows);
        for (std::size_t r = 0; r < _rows; ++r) {
            auto i = _order[r];
            config.curves[i].vertex = _presentation.curves[i].vertex;
            config.curves[i].row = _m[r];
        }
        _result->canonical_count += 1;
        _result->labeled_count += labeled_multiplicity(config);
        if (_mode.emit != EmitMode::Count)
            _result->solutions.push_back(std::move(config));
        if (_mode.emit == EmitMode::First)
            throw Stop{};
    }

    const SandwichPresentation & _presentation;
    const SolveMode & _mode;
    std::size_t _rows, _cols;
    std::chrono::steady_clock::time_point _start;
    std::vector<std::size_t> _order;
    std::vector<long> _size;
    std::vector<bool> _cusp;
    std::vector<std::vector<long>> _target;
    std::vector<std::size_t> _twin;
    std::vector<long> _remaining_after;
    std::vector<std::vector<int>> _m;
    std::vector<std::vector<long>> _suffix;
    std::vector<bool> _tied, _used;
    std::vector<long> _need;
    bool _row_equal_twin = false;
    std::uint64_t _nodes = 0;
    SolveResult * _result = nullptr;
};

} // namespace

auto solve(const SandwichPresentation & presentation, const SolveMode & mode) -> SolveResult
{
    auto rows = static_cast<long>(presentation.curves.size());
    require(presentation.gram.size() == presentation.curves.size(), "presentation Gram matrix has the wrong size");
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < rows; ++j)
            if (i != j) {
                auto g = presentation.gram[i][j];
                require(g >= 0 && g == presentation.gram[j][i], "Gram matrix must be symmetric and non-negative");
            }

    long total = 0, widest = 0;
    for (const auto & c : presentation.curves) {
        require(c.size >= 0, "negative curve size");
        total += c.size;
        widest = std::max<long>(widest, c.size - (c.kind == BranchKind::Cusp ? 1 : 0));
    }

    long low = mode.mu ? rows + *mode.mu : std::max(widest, 0L);
    long high = mode.mu ? low : total;
    SolveResult result;
    auto start = std::chrono::steady_clock::now();
    for (long points = std::max(low, 0L); points <= high; ++points) {
        Search search(presentation, mode, static_cast<std::size_t>(points));
        try {
            search.run(result);
        }
        catch (const Search::Stop &) {
            result.nodes += search.nodes();
            if (result.solutions.empty() || mode.emit != EmitMode::First) {
                result.status = SolveStatus::Timeout;
                result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                return result;
            }
            break;
        }
        result.nodes += search.nodes();
    }
    result.status = result.canonical_count > 0 ? SolveStatus::Found : SolveStatus::NoSolution;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace qhd
