#pragma once

#include "lcy/pair_model.hpp"

#include <random>

namespace fixture {

// Smooth complete fan with n rays: P2 or a Hirzebruch fan, then toric blowups at random corners.
inline std::vector<lcy::I2> random_fan(std::mt19937& rng, int n) {
    std::vector<lcy::I2> f;
    if (n == 3 || rng() % 2)
        f = {{1, 0}, {0, 1}, {-1, -1}};
    else
        f = {{1, 0}, {0, 1}, {-1, static_cast<lcy::i64>(rng() % 3)}, {0, -1}};
    while (static_cast<int>(f.size()) < n) {
        std::size_t k = rng() % f.size();
        f.insert(f.begin() + static_cast<long>(k) + 1, f[k] + f[(k + 1) % f.size()]);
    }
    return f;
}

// Positive pair with a toric model: 3 <= n <= max_n, l_i <= max_l, |D_i²| <= max_self.
inline lcy::LooijengaPair random_positive_pair(std::mt19937& rng, int max_n, int max_l, lcy::i64 max_self) {
    for (;;) {
        int n = 3 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 2));
        auto f = random_fan(rng, n);
        std::vector<int> l(f.size());
        int total = 0;
        for (auto& x : l) total += x = static_cast<int>(rng() % static_cast<unsigned>(max_l + 1));
        if (total == 0) continue;
        auto p = lcy::pair_from_fan(f, l);
        bool small = true;
        for (auto s : p.self_ints()) small = small && s >= -max_self && s <= max_self;
        if (small && lcy::is_positive(p).status == lcy::PositivityStatus::Positive) return p;
    }
}

} // namespace fixture
