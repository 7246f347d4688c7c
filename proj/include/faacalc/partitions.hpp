#ifndef FAACALC_PARTITIONS_HPP
#define FAACALC_PARTITIONS_HPP

// Enumeration of the three partition families that index the chain-rule sums:
// set partitions into non-empty blocks, ordered partitions into d+1 possibly
// empty position-significant blocks, and recursively nested partitions.
//
// Enumerators are lazy single-consumer iterators; each yielded value is an
// immutable snapshot, so values can be shared across threads freely.

#include <algorithm>
#include <optional>
#include <vector>

#include "faacalc/errors.hpp"

namespace faacalc {

// Blocks are non-empty, pairwise disjoint, cover {1..m}; within a block the
// 1-based indices ascend, and blocks are ordered by their minimal element.
struct SetPartition {
    int ground_size = 0;
    std::vector<std::vector<int>> blocks;

    bool operator==(const SetPartition&) const = default;
};

// Exactly d+1 blocks, possibly empty, position-significant, covering {1..m}.
struct OrderedPartition {
    int ground_size = 0;
    std::vector<std::vector<int>> blocks;

    bool operator==(const OrderedPartition&) const = default;
};

// A level-0 nesting of a set is the bare set (no children). A level-l
// nesting, l >= 1, partitions its leaf set into blocks ordered by minimal
// leaf, each carrying a level-(l-1) nesting of that block.
struct NestedPartition {
    int level = 0;
    std::vector<int> leaves;
    std::vector<NestedPartition> children;

    bool operator==(const NestedPartition&) const = default;
};

// Lazily yields P(m,k), or all of P(m) when k is absent, in restricted-growth
// string order (lexicographic on the growth string). Conventions: k > m or
// k = 0 with m >= 1 gives an empty stream; m = 0 yields the empty partition.
class SetPartitionEnumerator {
public:
    explicit SetPartitionEnumerator(int m, std::optional<int> k = std::nullopt)
        : m_(m), k_(k) {
        if (m < 0 || (k && *k < 0)) throw input_error("partition sizes must be non-negative");
        if (m_ == 0) {
            empty_case_ = !k_ || *k_ == 0;
            done_ = false;
            return;
        }
        if (k_ && (*k_ > m_ || *k_ == 0)) {
            done_ = true;
            return;
        }
        a_.assign(static_cast<size_t>(m_), 0);
        b_.assign(static_cast<size_t>(m_), 0);
        cap_ = k_ ? *k_ - 1 : m_ - 1;
        fresh_ = true;
    }

    std::optional<SetPartition> next() {
        if (done_) return std::nullopt;
        if (m_ == 0) {
            done_ = true;
            if (!empty_case_) return std::nullopt;
            return SetPartition{0, {}};
        }
        for (;;) {
            if (fresh_) {
                fresh_ = false;
            } else if (!increment()) {
                done_ = true;
                return std::nullopt;
            }
            if (!k_ || block_count() == *k_) return materialize();
        }
    }

private:
    int block_count() const {
        return std::max(b_[static_cast<size_t>(m_ - 1)], a_[static_cast<size_t>(m_ - 1)]) + 1;
    }

    bool increment() {
        for (int i = m_ - 1; i >= 1; --i) {
            auto ui = static_cast<size_t>(i);
            if (a_[ui] <= b_[ui] && a_[ui] < cap_) {
                ++a_[ui];
                for (int j = i + 1; j < m_; ++j) {
                    auto uj = static_cast<size_t>(j);
                    a_[uj] = 0;
                    b_[uj] = std::max(b_[uj - 1], a_[uj - 1]);
                }
                return true;
            }
        }
        return false;
    }

    SetPartition materialize() const {
        SetPartition p;
        p.ground_size = m_;
        p.blocks.resize(static_cast<size_t>(block_count()));
        for (int i = 0; i < m_; ++i)
            p.blocks[static_cast<size_t>(a_[static_cast<size_t>(i)])].push_back(i + 1);
        return p;
    }

    int m_;
    std::optional<int> k_;
    std::vector<int> a_;  // growth string
    std::vector<int> b_;  // b[i] = max(a[0..i-1]); b[0] = 0
    int cap_ = 0;         // largest digit ever allowed
    bool fresh_ = false;
    bool done_ = false;
    bool empty_case_ = false;
};

// Lazily yields all (d+1)^m assignments of {1..m} into d+1 position-
// significant blocks, in base-(d+1) counting order with index 1 as the most
// significant digit. m = 0 yields the single partition of d+1 empty blocks.
class OrderedPartitionEnumerator {
public:
    OrderedPartitionEnumerator(int m, int d) : m_(m), d_(d) {
        if (m < 0 || d < 0) throw input_error("ordered partition sizes must be non-negative");
        digits_.assign(static_cast<size_t>(m_), 0);
        fresh_ = true;
    }

    std::optional<OrderedPartition> next() {
        if (done_) return std::nullopt;
        if (fresh_) {
            fresh_ = false;
        } else {
            int i = m_ - 1;
            while (i >= 0 && digits_[static_cast<size_t>(i)] == d_) {
                digits_[static_cast<size_t>(i)] = 0;
                --i;
            }
            if (i < 0) {
                done_ = true;
                return std::nullopt;
            }
            ++digits_[static_cast<size_t>(i)];
        }
        OrderedPartition p;
        p.ground_size = m_;
        p.blocks.resize(static_cast<size_t>(d_) + 1);
        for (int i = 0; i < m_; ++i)
            p.blocks[static_cast<size_t>(digits_[static_cast<size_t>(i)])].push_back(i + 1);
        if (m_ == 0) done_ = true;
        return p;
    }

private:
    int m_;
    int d_;
    std::vector<int> digits_;
    bool fresh_ = false;
    bool done_ = false;
};

namespace detail {

// Materializes every level-l nesting of the given leaf set, children ordered
// by minimal leaf, top partitions in restricted-growth order, and the
// odometer over child nestings running with the last block fastest.
inline std::vector<NestedPartition> all_nestings(const std::vector<int>& leaves, int level) {
    std::vector<NestedPartition> out;
    if (level == 0) {
        out.push_back(NestedPartition{0, leaves, {}});
        return out;
    }
    const int n = static_cast<int>(leaves.size());
    SetPartitionEnumerator top(n);
    while (auto p = top.next()) {
        std::vector<std::vector<NestedPartition>> options;
        options.reserve(p->blocks.size());
        for (const auto& block : p->blocks) {
            std::vector<int> sub;
            sub.reserve(block.size());
            for (int i : block) sub.push_back(leaves[static_cast<size_t>(i - 1)]);
            options.push_back(all_nestings(sub, level - 1));
        }
        std::vector<size_t> pick(options.size(), 0);
        for (;;) {
            NestedPartition nested;
            nested.level = level;
            nested.leaves = leaves;
            for (size_t b = 0; b < options.size(); ++b)
                nested.children.push_back(options[b][pick[b]]);
            out.push_back(std::move(nested));
            size_t b = options.size();
            while (b > 0) {
                --b;
                if (++pick[b] < options[b].size()) break;
                pick[b] = 0;
                if (b == 0) goto next_partition;
            }
            if (options.empty()) break;
        }
    next_partition:;
    }
    return out;
}

} // namespace detail

// Lazily yields P^l(m). The top-level partition stream is lazy; the nestings
// of each top-level partition's blocks are materialized per partition.
class NestedPartitionEnumerator {
public:
    NestedPartitionEnumerator(int m, int level) : m_(m), level_(level), top_(m) {
        if (m < 0 || level < 0) throw input_error("nested partition sizes must be non-negative");
        for (int i = 1; i <= m_; ++i) identity_.push_back(i);
    }

    std::optional<NestedPartition> next() {
        if (done_) return std::nullopt;
        if (level_ == 0) {
            done_ = true;
            return NestedPartition{0, identity_, {}};
        }
        if (m_ == 0) {
            done_ = true;
            return NestedPartition{level_, {}, {}};
        }
        for (;;) {
            if (buffer_pos_ < buffer_.size()) return buffer_[buffer_pos_++];
            auto p = top_.next();
            if (!p) {
                done_ = true;
                return std::nullopt;
            }
            refill(*p);
        }
    }

private:
    void refill(const SetPartition& p) {
        buffer_.clear();
        buffer_pos_ = 0;
        std::vector<std::vector<NestedPartition>> options;
        options.reserve(p.blocks.size());
        for (const auto& block : p.blocks)
            options.push_back(detail::all_nestings(block, level_ - 1));
        std::vector<size_t> pick(options.size(), 0);
        for (;;) {
            NestedPartition nested;
            nested.level = level_;
            nested.leaves = identity_;
            for (size_t b = 0; b < options.size(); ++b)
                nested.children.push_back(options[b][pick[b]]);
            buffer_.push_back(std::move(nested));
            size_t b = options.size();
            while (b > 0) {
                --b;
                if (++pick[b] < options[b].size()) break;
                pick[b] = 0;
                if (b == 0) return;
            }
        }
    }

    int m_;
    int level_;
    SetPartitionEnumerator top_;
    std::vector<int> identity_;
    std::vector<NestedPartition> buffer_;
    size_t buffer_pos_ = 0;
    bool done_ = false;
};

inline SetPartitionEnumerator enumerate_partitions(int m, std::optional<int> k = std::nullopt) {
    return SetPartitionEnumerator(m, k);
}

inline OrderedPartitionEnumerator enumerate_ordered_partitions(int m, int d) {
    return OrderedPartitionEnumerator(m, d);
}

inline NestedPartitionEnumerator enumerate_nested_partitions(int m, int level) {
    return NestedPartitionEnumerator(m, level);
}

inline std::vector<SetPartition> all_partitions(int m, std::optional<int> k = std::nullopt) {
    std::vector<SetPartition> out;
    auto e = enumerate_partitions(m, k);
    while (auto p = e.next()) out.push_back(std::move(*p));
    return out;
}

inline std::vector<OrderedPartition> all_ordered_partitions(int m, int d) {
    std::vector<OrderedPartition> out;
    auto e = enumerate_ordered_partitions(m, d);
    while (auto p = e.next()) out.push_back(std::move(*p));
    return out;
}

inline std::vector<NestedPartition> all_nested_partitions(int m, int level) {
    std::vector<NestedPartition> out;
    auto e = enumerate_nested_partitions(m, level);
    while (auto p = e.next()) out.push_back(std::move(*p));
    return out;
}

} // namespace faacalc

#endif
