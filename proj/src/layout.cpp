#include "lhs/layout.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace lhs {

QubitLayout::QubitLayout(std::vector<std::string> parties)
    : parties_(std::move(parties)) {
    if (parties_.empty()) {
        throw std::invalid_argument("QubitLayout: party list is empty");
    }
    std::unordered_set<std::string> seen;
    for (const auto& p : parties_) {
        if (p.empty()) {
            throw std::invalid_argument("QubitLayout: empty party label");
        }
        if (!seen.insert(p).second) {
            throw std::invalid_argument("QubitLayout: duplicate party label '" + p + "'");
        }
    }
    if (parties_.size() > 30) {
        throw std::invalid_argument("QubitLayout: register too large for dense representation");
    }
}

bool QubitLayout::has(const std::string& label) const {
    return std::find(parties_.begin(), parties_.end(), label) != parties_.end();
}

std::size_t QubitLayout::position_of(const std::string& label) const {
    auto it = std::find(parties_.begin(), parties_.end(), label);
    if (it == parties_.end()) {
        throw std::invalid_argument("QubitLayout: unknown party label '" + label + "'");
    }
    return static_cast<std::size_t>(it - parties_.begin());
}

std::size_t QubitLayout::bit_of_position(std::size_t position) const {
    if (position >= parties_.size()) {
        throw std::invalid_argument("QubitLayout: party position out of range");
    }
    return parties_.size() - 1 - position;
}

QubitLayout QubitLayout::keep(const std::vector<std::string>& labels) const {
    if (labels.empty()) {
        throw std::invalid_argument("QubitLayout::keep: empty selection");
    }
    std::unordered_set<std::string> wanted;
    for (const auto& l : labels) {
        if (!has(l)) {
            throw std::invalid_argument("QubitLayout::keep: unknown party label '" + l + "'");
        }
        if (!wanted.insert(l).second) {
            throw std::invalid_argument("QubitLayout::keep: duplicate party label '" + l + "'");
        }
    }
    std::vector<std::string> kept;
    for (const auto& p : parties_) {
        if (wanted.count(p)) kept.push_back(p);
    }
    return QubitLayout(std::move(kept));
}

QubitLayout QubitLayout::without(const std::string& label) const {
    position_of(label);   // existence check
    std::vector<std::string> rest;
    for (const auto& p : parties_) {
        if (p != label) rest.push_back(p);
    }
    if (rest.empty()) {
        throw std::invalid_argument("QubitLayout::without: no parties would remain");
    }
    return QubitLayout(std::move(rest));
}

} // namespace lhs
