#include "lhs/partitions.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lhs {

namespace {

void canonicalize(std::vector<std::vector<std::string>>& blocks) {
    for (auto& block : blocks) {
        std::sort(block.begin(), block.end());
    }
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

} // namespace

Partition::Partition(std::vector<std::vector<std::string>> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw std::invalid_argument("Partition: no blocks");
    }
    std::set<std::string> seen;
    for (const auto& block : blocks_) {
        if (block.empty()) {
            throw std::invalid_argument("Partition: empty block");
        }
        for (const auto& label : block) {
            if (label.empty()) {
                throw std::invalid_argument("Partition: empty party label");
            }
            if (!seen.insert(label).second) {
                throw std::invalid_argument("Partition: label '" + label + "' appears in two blocks");
            }
        }
    }
    canonicalize(blocks_);
}

Partition Partition::parse(const std::string& text) {
    std::vector<std::vector<std::string>> blocks;
    std::stringstream block_stream(text);
    std::string block_text;
    while (std::getline(block_stream, block_text, '|')) {
        std::vector<std::string> block;
        std::stringstream label_stream(block_text);
        std::string label;
        while (std::getline(label_stream, label, ',')) {
            label = trim(label);
            if (label.empty()) {
                throw std::invalid_argument("Partition::parse: empty label in '" + text + "'");
            }
            block.push_back(label);
        }
        if (block.empty()) {
            throw std::invalid_argument("Partition::parse: empty block in '" + text + "'");
        }
        blocks.push_back(std::move(block));
    }
    if (blocks.empty()) {
        throw std::invalid_argument("Partition::parse: no blocks in '" + text + "'");
    }
    return Partition(std::move(blocks));
}

Partition Partition::trivial(const std::vector<std::string>& labels) {
    return Partition({labels});
}

Partition Partition::singletons(const std::vector<std::string>& labels) {
    std::vector<std::vector<std::string>> blocks;
    for (const auto& label : labels) blocks.push_back({label});
    return Partition(std::move(blocks));
}

Partition Partition::equal_blocks(const std::vector<std::string>& labels, std::size_t k) {
    if (k == 0 || labels.size() % k != 0) {
        std::ostringstream os;
        os << "Partition::equal_blocks: " << k << " does not divide " << labels.size();
        throw std::invalid_argument(os.str());
    }
    const std::size_t block_size = labels.size() / k;
    std::vector<std::vector<std::string>> blocks(k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        blocks[i / block_size].push_back(labels[i]);
    }
    return Partition(std::move(blocks));
}

std::vector<std::string> Partition::all_labels() const {
    std::vector<std::string> labels;
    for (const auto& block : blocks_) {
        labels.insert(labels.end(), block.begin(), block.end());
    }
    std::sort(labels.begin(), labels.end());
    return labels;
}

std::size_t Partition::total_parties() const {
    std::size_t n = 0;
    for (const auto& block : blocks_) n += block.size();
    return n;
}

std::string Partition::to_text() const {
    std::ostringstream os;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) os << '|';
        for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
            if (i) os << ',';
            os << blocks_[b][i];
        }
    }
    return os.str();
}

std::vector<Partition> enumerate_partitions(const std::vector<std::string>& labels) {
    if (labels.empty()) {
        throw std::invalid_argument("enumerate_partitions: no labels");
    }
    if (labels.size() > kMaxPartitionLabels) {
        std::ostringstream os;
        os << "enumerate_partitions: " << labels.size() << " labels exceed the guardrail of "
           << kMaxPartitionLabels;
        throw std::invalid_argument(os.str());
    }

    std::vector<Partition> out;
    std::vector<std::vector<std::string>> blocks;
    blocks.reserve(labels.size());
    // Each label joins an existing block or opens a new one; every set
    // partition is produced exactly once. Indexed loop: the recursion grows
    // and shrinks `blocks` underneath us.
    auto place = [&](auto&& self, std::size_t index) -> void {
        if (index == labels.size()) {
            out.emplace_back(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(labels[index]);
            self(self, index + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({labels[index]});
        self(self, index + 1);
        blocks.pop_back();
    };
    place(place, 0);
    return out;
}

YoungClass young_class(const Partition& partition) {
    YoungClass yc;
    yc.height = partition.blocks().size();
    yc.total = partition.total_parties();
    for (const auto& block : partition.blocks()) {
        yc.width = std::max(yc.width, block.size());
    }
    return yc;
}

double fmax_wh(std::size_t n, std::size_t w, std::size_t h) {
    if (n == 0 || w < 1 || w > n || h < 1 || h > n) {
        std::ostringstream os;
        os << "fmax_wh: arguments (N=" << n << ", w=" << w << ", h=" << h
           << ") outside 1 <= w,h <= N";
        throw std::invalid_argument(os.str());
    }
    return static_cast<double>(w) * static_cast<double>(n - h) + static_cast<double>(n);
}

} // namespace lhs
