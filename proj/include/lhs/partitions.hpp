#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lhs {

// Enumeration guardrail: Bell(12) ~ 4.2 million partitions is the practical
// ceiling for dense scans.
inline constexpr std::size_t kMaxPartitionLabels = 12;

// Disjoint decomposition of party labels into nonempty blocks, held in
// canonical form: members sorted within each block, blocks sorted by
// descending size and then by their lexicographically smallest member.
class Partition {
public:
    explicit Partition(std::vector<std::vector<std::string>> blocks);

    // Text form: blocks separated by '|', members by ',' (e.g. "1,2|3,4").
    static Partition parse(const std::string& text);
    static Partition trivial(const std::vector<std::string>& labels);
    static Partition singletons(const std::vector<std::string>& labels);
    // k consecutive blocks of equal size; k must divide the label count.
    static Partition equal_blocks(const std::vector<std::string>& labels, std::size_t k);

    const std::vector<std::vector<std::string>>& blocks() const { return blocks_; }
    std::vector<std::string> all_labels() const;   // sorted union
    std::size_t total_parties() const;
    std::string to_text() const;

    bool operator==(const Partition& other) const { return blocks_ == other.blocks_; }

private:
    std::vector<std::vector<std::string>> blocks_;
};

// Young-diagram summary: width = largest block, height = block count.
struct YoungClass {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t total = 0;
};

// All set partitions of `labels` in canonical form; exactly the Bell number
// of them.
std::vector<Partition> enumerate_partitions(const std::vector<std::string>& labels);

YoungClass young_class(const Partition& partition);

// State-independent sensitivity ceiling w*(N - h) + N for (w,h)-separable
// states under a collective spin generator.
double fmax_wh(std::size_t n, std::size_t w, std::size_t h);

} // namespace lhs
