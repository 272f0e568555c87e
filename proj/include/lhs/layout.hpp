#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lhs {

// Ordered register of named parties, one qubit each.
//
// Index convention (fixed throughout the library): the party at list
// position 0 owns the most significant bit of a computational-basis index.
// For parties {A, B1, B2} the basis state |a b1 b2> has index
// a*4 + b1*2 + b2, and basis vector e0 of a single qubit is the spin-up
// (+1 eigenstate of sigma_z) state.
class QubitLayout {
public:
    explicit QubitLayout(std::vector<std::string> parties);

    std::size_t size() const { return parties_.size(); }
    std::size_t dim() const { return std::size_t{1} << parties_.size(); }
    const std::vector<std::string>& parties() const { return parties_; }

    bool has(const std::string& label) const;
    // Position in the party list; throws std::invalid_argument on unknown labels.
    std::size_t position_of(const std::string& label) const;
    // Bit of a basis index owned by the party at `position` (MSB-first).
    std::size_t bit_of_position(std::size_t position) const;

    // Sub-layout of `labels` in original order. Rejects unknown labels,
    // duplicates and the empty selection.
    QubitLayout keep(const std::vector<std::string>& labels) const;
    // All parties except `label`, in original order.
    QubitLayout without(const std::string& label) const;

    bool operator==(const QubitLayout& other) const { return parties_ == other.parties_; }
    bool operator!=(const QubitLayout& other) const { return !(*this == other); }

private:
    std::vector<std::string> parties_;
};

} // namespace lhs
