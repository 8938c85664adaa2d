#include "moldable/gen.hpp"

#include <random>

namespace moldable {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

// Uniform integer in [lo, hi] by rejection; std::uniform_int_distribution is
// not specified bit-for-bit across standard libraries.
std::int64_t uniform_between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(rng());
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span + 1) % span;
    std::uint64_t x;
    do x = rng();
    while (x > limit);
    return lo + static_cast<std::int64_t>(x % span);
}

std::int64_t to_i64(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) throw ContractViolation(std::string("generate: ") + what + " out of range");
    return z.get_si();
}

}  // namespace

Instance generate(const GenConfig& cfg) {
    if (cfg.n < 0 || cfg.m < 1) throw ContractViolation("generate: need n >= 0 and m >= 1");
    if (cfg.quantization < 1) throw ContractViolation("generate: quantization must be positive");
    if (cfg.t1_low.sign() <= 0 || cfg.t1_low > cfg.t1_high)
        throw ContractViolation("generate: need 0 < t1_low <= t1_high");

    const Rat q(cfg.quantization);
    const std::int64_t lo = to_i64((cfg.t1_low * q).ceil(), "t1_low");
    const std::int64_t hi = to_i64((cfg.t1_high * q).floor(), "t1_high");
    if (lo > hi) throw ContractViolation("generate: no multiple of 1/quantization in [t1_low, t1_high]");

    Instance inst;
    inst.m = cfg.m;
    inst.jobs.resize(static_cast<std::size_t>(cfg.n));
    for (int j = 0; j < cfg.n; ++j) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(j))));
        Job& job = inst.jobs[static_cast<std::size_t>(j)];
        job.id = j + 1;
        job.times.reserve(static_cast<std::size_t>(cfg.m));
        std::int64_t x = uniform_between(rng, lo, hi);
        job.times.emplace_back(x, cfg.quantization);
        for (std::int64_t k = 2; k <= cfg.m; ++k) {
            const std::int64_t floor_k = ((k - 1) * x + k - 1) / k;  // ceil((k-1) x / k)
            x = uniform_between(rng, floor_k, x);
            job.times.emplace_back(x, cfg.quantization);
        }
    }
    return inst;
}

Instance adversarial_instance() {
    Instance inst;
    inst.m = 13;
    std::vector<Rat> works{Rat(601, 100), Rat(99, 100)};
    for (int i = 0; i < 8; ++i) works.emplace_back(3, 4);
    JobId id = 1;
    for (const Rat& w : works) {
        Job job;
        job.id = id++;
        for (long k = 1; k <= inst.m; ++k) job.times.push_back(w / Rat(k));
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

}  // namespace moldable
