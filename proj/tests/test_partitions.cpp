#include <catch2/catch_amalgamated.hpp>

#include "faacalc/partitions.hpp"
#include "faacalc/scalar.hpp"

using namespace faacalc;

namespace {

bigint stirling2(int m, int k) {
    if (m == 0 && k == 0) return 1;
    if (m == 0 || k == 0 || k > m) return 0;
    return bigint(k) * stirling2(m - 1, k) + stirling2(m - 1, k - 1);
}

bigint bell(int m) {
    bigint total = 0;
    for (int k = 0; k <= m; ++k) total += stirling2(m, k);
    return total;
}

} // namespace

TEST_CASE("set partition counts match the recurrence") {
    for (int m = 0; m <= 6; ++m) {
        for (int k = 0; k <= m + 1; ++k) {
            size_t count = all_partitions(m, k).size();
            REQUIRE(bigint(count) == stirling2(m, k));
        }
        REQUIRE(bigint(all_partitions(m).size()) == bell(m));
    }
}

TEST_CASE("set partitions come in growth-string order") {
    auto parts = all_partitions(3, 2);
    REQUIRE(parts.size() == 3);
    REQUIRE(parts[0].blocks == std::vector<std::vector<int>>{{1, 2}, {3}});
    REQUIRE(parts[1].blocks == std::vector<std::vector<int>>{{1, 3}, {2}});
    REQUIRE(parts[2].blocks == std::vector<std::vector<int>>{{1}, {2, 3}});

    auto all3 = all_partitions(3);
    REQUIRE(all3.front().blocks == std::vector<std::vector<int>>{{1, 2, 3}});
    REQUIRE(all3.back().blocks == std::vector<std::vector<int>>{{1}, {2}, {3}});
}

TEST_CASE("set partition structural invariants") {
    for (const auto& part : all_partitions(5)) {
        std::vector<bool> seen(6, false);
        int previous_min = 0;
        for (const auto& block : part.blocks) {
            REQUIRE(!block.empty());
            REQUIRE(std::is_sorted(block.begin(), block.end()));
            REQUIRE(block.front() > previous_min);
            previous_min = block.front();
            for (int e : block) {
                REQUIRE(e >= 1);
                REQUIRE(e <= 5);
                REQUIRE(!seen[static_cast<size_t>(e)]);
                seen[static_cast<size_t>(e)] = true;
            }
        }
        for (int e = 1; e <= 5; ++e) REQUIRE(seen[static_cast<size_t>(e)]);
    }
}

TEST_CASE("edge cases of the set partition stream") {
    REQUIRE(all_partitions(0).size() == 1);
    REQUIRE(all_partitions(0).front().blocks.empty());
    REQUIRE(all_partitions(3, 0).empty());
    REQUIRE(all_partitions(2, 5).empty());
    REQUIRE_THROWS_AS(all_partitions(-1), input_error);
}

TEST_CASE("ordered partitions count (d+1)^m and keep position significance") {
    for (int m = 0; m <= 5; ++m)
        for (int d = 0; d <= 3; ++d) {
            auto parts = all_ordered_partitions(m, d);
            REQUIRE(bigint(parts.size()) == ipow(bigint(d + 1), static_cast<unsigned>(m)));
            for (const auto& part : parts) {
                REQUIRE(part.blocks.size() == static_cast<size_t>(d) + 1);
                size_t total = 0;
                for (const auto& block : part.blocks) total += block.size();
                REQUIRE(total == static_cast<size_t>(m));
            }
        }
}

TEST_CASE("ordered partition odometer order for m=2 d=1") {
    auto parts = all_ordered_partitions(2, 1);
    REQUIRE(parts.size() == 4);
    REQUIRE(parts[0].blocks == std::vector<std::vector<int>>{{1, 2}, {}});
    REQUIRE(parts[1].blocks == std::vector<std::vector<int>>{{1}, {2}});
    REQUIRE(parts[2].blocks == std::vector<std::vector<int>>{{2}, {1}});
    REQUIRE(parts[3].blocks == std::vector<std::vector<int>>{{}, {1, 2}});
}

TEST_CASE("nested partition counts match the recursive product rule") {
    // count(l, m) = sum over plain partitions of prod over blocks of
    // count(l-1, |block|); level 0 has exactly one nesting.
    std::vector<std::vector<bigint>> C(4, std::vector<bigint>(7, 1));
    for (int l = 1; l <= 3; ++l)
        for (int m = 1; m <= 6; ++m) {
            bigint total = 0;
            for (const auto& part : all_partitions(m)) {
                bigint prod = 1;
                for (const auto& block : part.blocks)
                    prod *= C[static_cast<size_t>(l - 1)][block.size()];
                total += prod;
            }
            C[static_cast<size_t>(l)][static_cast<size_t>(m)] = total;
        }
    for (int l = 0; l <= 3; ++l)
        for (int m = 1; m <= 6; ++m)
            REQUIRE(bigint(all_nested_partitions(m, l).size()) ==
                    C[static_cast<size_t>(l)][static_cast<size_t>(m)]);
}

TEST_CASE("nested partition structure") {
    auto level0 = all_nested_partitions(3, 0);
    REQUIRE(level0.size() == 1);
    REQUIRE(level0[0].level == 0);
    REQUIRE(level0[0].leaves == std::vector<int>{1, 2, 3});
    REQUIRE(level0[0].children.empty());

    for (const auto& nesting : all_nested_partitions(4, 2)) {
        REQUIRE(nesting.level == 2);
        REQUIRE(nesting.leaves == std::vector<int>{1, 2, 3, 4});
        int previous_min = 0;
        std::vector<int> all_leaves;
        for (const auto& child : nesting.children) {
            REQUIRE(child.level == 1);
            REQUIRE(!child.leaves.empty());
            REQUIRE(child.leaves.front() > previous_min);
            previous_min = child.leaves.front();
            all_leaves.insert(all_leaves.end(), child.leaves.begin(), child.leaves.end());
        }
        std::sort(all_leaves.begin(), all_leaves.end());
        REQUIRE(all_leaves == nesting.leaves);
    }
}

TEST_CASE("enumerators and eager lists agree") {
    SetPartitionEnumerator en(4);
    for (const auto& expected : all_partitions(4)) {
        auto got = en.next();
        REQUIRE(got.has_value());
        REQUIRE(*got == expected);
    }
    REQUIRE(!en.next().has_value());

    OrderedPartitionEnumerator oen(3, 2);
    for (const auto& expected : all_ordered_partitions(3, 2)) {
        auto got = oen.next();
        REQUIRE(got.has_value());
        REQUIRE(*got == expected);
    }
    REQUIRE(!oen.next().has_value());

    NestedPartitionEnumerator nen(3, 2);
    for (const auto& expected : all_nested_partitions(3, 2)) {
        auto got = nen.next();
        REQUIRE(got.has_value());
        REQUIRE(*got == expected);
    }
    REQUIRE(!nen.next().has_value());
}
