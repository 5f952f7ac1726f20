#include <gmq/poles.hpp>

#include <algorithm>
#include <map>

namespace gmq {

std::vector<Pole> enumerate_poles(const RbfParams& p, const Rat& t_max) {
    validate(p);

    // cancelled iff d*t is an integer <= 0
    auto cancelled = [&](const Rat& t) {
        Rat dt = std::int64_t(p.d) * t;
        return dt.is_integer() && dt.num <= 0;
    };

    std::map<Rat, Pole> at;

    // family 1: Gamma(-1/2 - t) poles at t = m - 1/2, m = 0, 1, 2, ...
    for (int m = 0;; ++m) {
        Rat t(2 * std::int64_t(m) - 1, 2);
        if (t > t_max) break;
        if (cancelled(t)) continue;
        Pole pole{t, 1, PoleFamily::half_integer, m, -1};
        at.emplace(t, pole);
    }

    // The Gamma(t) factor also has poles, but only t = 0 lies in the
    // half-plane t >= -1/2 and 1/Gamma(d t) always cancels it, so the
    // family never contributes.

    // family 2: Gamma(n/2 - d t) poles at t = (n + 2m)/(2d), m = 0, 1, ...
    for (int m = 0;; ++m) {
        Rat t(p.n + 2 * std::int64_t(m), 2 * std::int64_t(p.d));
        if (t > t_max) break;
        if (cancelled(t)) continue;
        auto [it, fresh] = at.try_emplace(t, Pole{t, 1, PoleFamily::gamma_third, -1, m});
        if (!fresh) {
            it->second.order = 2;
            it->second.family = PoleFamily::merged;
            it->second.m_third = m;
        }
    }

    std::vector<Pole> out;
    out.reserve(at.size());
    for (auto& [t, pole] : at) out.push_back(pole);
    return out;
}

} // namespace gmq
