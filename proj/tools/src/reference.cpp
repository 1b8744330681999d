#include "reference.hpp"

#include <vector>

namespace rainbow::reference {

namespace {

bool extend(const Instance& inst, std::size_t size, std::size_t next_color, std::vector<const Edge*>& chosen) {
    if (chosen.size() == size) return true;
    for (std::size_t c = next_color; c < inst.matchings.size(); ++c) {
        for (const auto& e : inst.matchings[c].edges) {
            bool ok = true;
            for (const Edge* o : chosen) {
                for (auto v : e.vertices.to_vector())
                    if (o->vertices.contains(v)) ok = false;
            }
            if (!ok) continue;
            chosen.push_back(&e);
            if (extend(inst, size, c + 1, chosen)) return true;
            chosen.pop_back();
        }
    }
    return false;
}

bool strong_extend(const Instance& inst, std::vector<std::pair<std::size_t, const Edge*>>& picks) {
    if (picks.size() == inst.t) {
        for (const auto& p : picks)
            if (p.first != picks.front().first) return false;
        return true;
    }
    for (std::size_t c = 0; c < inst.matchings.size(); ++c)
        for (const auto& e : inst.matchings[c].edges) {
            bool ok = true;
            for (const auto& p : picks)
                if (e.vertices.intersects(p.second->vertices)) ok = false;
            if (!ok) continue;
            picks.emplace_back(c, &e);
            const bool fine = strong_extend(inst, picks);
            picks.pop_back();
            if (!fine) return false;
        }
    return true;
}

} // namespace

bool has_rainbow(const Instance& inst, std::size_t size) {
    std::vector<const Edge*> chosen;
    return extend(inst, size, 0, chosen);
}

bool strong_property_holds(const Instance& inst) {
    std::vector<std::pair<std::size_t, const Edge*>> picks;
    return strong_extend(inst, picks);
}

} // namespace rainbow::reference
