#include "moldable/mckp.hpp"

#include <cstdint>
#include <limits>

namespace moldable {

std::variant<std::vector<MckpItem>, GammaReject> build_items(const Instance& inst,
                                                             std::span<const std::size_t> big,
                                                             const Rat& d) {
    const std::array<Rat, 3> heights{d, constants::class2_frac() * d, constants::small_threshold_frac() * d};
    std::vector<MckpItem> items;
    items.reserve(big.size());
    for (std::size_t idx : big) {
        const Job& job = inst.jobs[idx];
        MckpItem item{idx, job.id, {}};
        for (std::size_t l = 0; l < 3; ++l) {
            const int k = gamma(job, heights[l]);
            MckpOption& opt = item.options[l];
            opt.machines = k;
            if (k == kInfinity) continue;
            opt.cost = work(job, k);
            opt.size2 = l == 0 ? 2L * k : l == 1 ? k : 0;
        }
        if (!item.options[0].available()) return GammaReject{job.id};
        items.push_back(std::move(item));
    }
    return items;
}

namespace {

// f[i][c]: minimum cost of items i..n-1 with total size exactly c.
template <class Cost>
std::optional<MckpSolution> solve_dp(std::span<const MckpItem> items, long capacity,
                                     const std::vector<std::array<Cost, 3>>& costs) {
    const std::size_t n = items.size();
    const auto width = static_cast<std::size_t>(capacity + 1);
    std::vector<Cost> f((n + 1) * width);
    std::vector<char> reach((n + 1) * width, 0);
    auto at = [width](std::size_t i, long c) { return i * width + static_cast<std::size_t>(c); };

    reach[at(n, 0)] = 1;
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t l = 0; l < 3; ++l) {
            const MckpOption& opt = items[i].options[l];
            if (!opt.available()) continue;
            for (long c = opt.size2; c <= capacity; ++c) {
                const std::size_t from = at(i + 1, c - opt.size2);
                if (!reach[from]) continue;
                Cost candidate = f[from] + costs[i][l];
                const std::size_t to = at(i, c);
                if (!reach[to] || candidate < f[to]) {
                    f[to] = std::move(candidate);
                    reach[to] = 1;
                }
            }
        }
    }

    long best = -1;
    for (long c = 0; c <= capacity; ++c)
        if (reach[at(0, c)] && (best < 0 || f[at(0, c)] < f[at(0, best)])) best = c;
    if (best < 0) return std::nullopt;

    MckpSolution sol;
    sol.assignment.resize(n);
    sol.total_size2 = best;
    long c = best;
    for (std::size_t i = 0; i < n; ++i) {
        bool chosen = false;
        for (std::size_t l = 0; l < 3 && !chosen; ++l) {
            const MckpOption& opt = items[i].options[l];
            if (!opt.available() || opt.size2 > c) continue;
            const std::size_t from = at(i + 1, c - opt.size2);
            if (reach[from] && f[from] + costs[i][l] == f[at(i, c)]) {
                sol.assignment[i] = static_cast<int>(l + 1);
                sol.total_cost += opt.cost;
                c -= opt.size2;
                chosen = true;
            }
        }
        if (!chosen) throw InvariantViolation("solve_mckp: reconstruction failed");
    }
    return sol;
}

}  // namespace

std::optional<MckpSolution> solve_mckp(std::span<const MckpItem> items, int m) {
    if (m < 1) throw ContractViolation("solve_mckp: m must be positive");
    const long capacity = 2L * m;

    // All costs share a finite common denominator; when the scaled sums fit
    // in 62 bits the DP runs on exact integers.
    mpz_class lcm = 1;
    for (const MckpItem& item : items)
        for (const MckpOption& opt : item.options)
            if (opt.available()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), opt.cost.raw().get_den_mpz_t());

    mpz_class total = 0;
    bool fits = true;
    std::vector<std::array<std::int64_t, 3>> scaled(items.size());
    for (std::size_t i = 0; i < items.size() && fits; ++i) {
        mpz_class worst = 0;
        for (std::size_t l = 0; l < 3; ++l) {
            const MckpOption& opt = items[i].options[l];
            if (!opt.available()) continue;
            if (opt.cost.sign() < 0) throw ContractViolation("solve_mckp: negative cost");
            mpz_class v = opt.cost.num() * (lcm / opt.cost.den());
            if (!v.fits_slong_p()) {
                fits = false;
                break;
            }
            scaled[i][l] = v.get_si();
            if (v > worst) worst = v;
        }
        total += worst;
        if (total > (mpz_class(1) << 62)) fits = false;
    }
    if (fits) return solve_dp<std::int64_t>(items, capacity, scaled);

    std::vector<std::array<Rat, 3>> exact(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t l = 0; l < 3; ++l)
            if (items[i].options[l].available()) exact[i][l] = items[i].options[l].cost;
    return solve_dp<Rat>(items, capacity, exact);
}

std::optional<MckpSolution> brute_mckp(std::span<const MckpItem> items, int m) {
    if (items.size() > 14) throw ContractViolation("brute_mckp: at most 14 items");
    const long capacity = 2L * m;
    const std::size_t n = items.size();

    std::optional<MckpSolution> best;
    std::vector<int> cls(n, 0);  // 0-based class digits, item 0 most significant
    while (true) {
        bool ok = true;
        long size = 0;
        Rat cost;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const MckpOption& opt = items[i].options[static_cast<std::size_t>(cls[i])];
            if (!opt.available()) {
                ok = false;
                break;
            }
            size += opt.size2;
            cost += opt.cost;
        }
        if (ok && size <= capacity &&
            (!best || cost < best->total_cost || (cost == best->total_cost && size < best->total_size2))) {
            MckpSolution sol;
            sol.assignment.resize(n);
            for (std::size_t i = 0; i < n; ++i) sol.assignment[i] = cls[i] + 1;
            sol.total_cost = cost;
            sol.total_size2 = size;
            best = std::move(sol);
        }
        // Next class vector in lexicographic order.
        std::size_t pos = n;
        while (pos > 0 && cls[pos - 1] == 2) cls[--pos] = 0;
        if (pos == 0) break;
        ++cls[pos - 1];
    }
    return best;
}

}  // namespace moldable
