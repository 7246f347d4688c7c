#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "faacalc/tensor.hpp"

using namespace faacalc;

namespace {

Tensor<rational> rmatrix(const std::vector<rational>& rows) {
    // 2x2 linear map, data[out*2 + in]
    auto t = make_tensor<rational>(1, 2, {2});
    t.data = rows;
    return t;
}

} // namespace

TEST_CASE("outer product layout is covariant-fast, left factor slow") {
    auto a = covector<rational>({rational(1), rational(2)});
    auto b = covector<rational>({rational(3), rational(5)});
    auto ab = tensor_product(a, b);
    REQUIRE(ab.cov_arity == 2);
    REQUIRE(ab.cov_dim == 2);
    REQUIRE(ab.contra_dims.empty());
    REQUIRE(ab.data == std::vector<rational>{rational(3), rational(5), rational(6), rational(10)});

    // contravariant axes sit on the slow side of the flat index
    auto u = make_tensor<rational>(0, 0, {2});
    u.data = {rational(7), rational(11)};
    auto ua = tensor_product(u, a);
    REQUIRE(ua.cov_arity == 1);
    REQUIRE(ua.contra_dims == std::vector<int>{2});
    REQUIRE(ua.data == std::vector<rational>{rational(7), rational(14), rational(11), rational(22)});
}

TEST_CASE("contraction of linear maps is the matrix product") {
    auto M = rmatrix({rational(1), rational(2), rational(3), rational(4)});
    auto N = rmatrix({rational(5), rational(6), rational(7), rational(8)});
    auto MN = contract(M, N);
    REQUIRE(MN.cov_arity == 1);
    REQUIRE(MN.contra_dims == std::vector<int>{2});
    REQUIRE(MN.data == std::vector<rational>{rational(19), rational(22), rational(43), rational(50)});

    auto id = identity_tensor<rational>(2);
    REQUIRE(contract(id, M).data == M.data);
    REQUIRE(contract(M, id).data == M.data);

    // covector applied to the output of a map: (1,2) . (M v)
    auto w = covector<rational>({rational(1), rational(2)});
    auto wM = contract(w, M);
    REQUIRE(wM.cov_arity == 1);
    REQUIRE(wM.contra_dims.empty());
    REQUIRE(wM.data == std::vector<rational>{rational(7), rational(10)});
}

TEST_CASE("slot permutation transposes argument positions") {
    auto B = make_tensor<rational>(2, 2, {});
    B.data = {rational(1), rational(2), rational(3), rational(4)};
    auto Bt = permute_cov(B, {1, 0});
    REQUIRE(Bt.data == std::vector<rational>{rational(1), rational(3), rational(2), rational(4)});

    // three slots, cycle (0 1 2): out[i0,i1,i2] = t[i2,i0,i1]
    auto T = make_tensor<rational>(3, 2, {});
    for (size_t f = 0; f < 8; ++f) T.data[f] = rational(static_cast<int>(f));
    auto C = permute_cov(T, {1, 2, 0});
    REQUIRE(C.data[4] == rational(2));  // out(1,0,0) = t(0,1,0)
    REQUIRE(C.data[2] == rational(1));  // out(0,1,0) = t(0,0,1)
    auto thrice = permute_cov(permute_cov(C, {1, 2, 0}), {1, 2, 0});
    REQUIRE(thrice.data == T.data);
}

TEST_CASE("symmetrization averages exactly") {
    auto a = covector<rational>({rational(1), rational(2)});
    auto b = covector<rational>({rational(3), rational(5)});
    auto ab = tensor_product(a, b);
    REQUIRE_FALSE(is_symmetric(ab));
    auto sym = symmetrize(ab);
    REQUIRE(sym.data == std::vector<rational>{rational(3), rational(11, 2), rational(11, 2), rational(10)});
    REQUIRE(is_symmetric(sym));

    REQUIRE(symmetrize_first(ab, 1).data == ab.data);
    REQUIRE(symmetrize_first(ab, 0).data == ab.data);

    auto sp = symmetric_product<rational>({a, b});
    REQUIRE(sp.data == sym.data);
    auto one = symmetric_product<rational>({});
    REQUIRE(one.cov_arity == 0);
    REQUIRE(one.data == std::vector<rational>{rational(1)});
}

TEST_CASE("linear arithmetic and norms") {
    auto a = covector<double>({3.0, 4.0});
    auto b = covector<double>({1.0, -1.0});
    REQUIRE(tensor_add(a, b).data == std::vector<double>{4.0, 3.0});
    REQUIRE(tensor_sub(a, b).data == std::vector<double>{2.0, 5.0});
    REQUIRE(tensor_scale(a, 2.0).data == std::vector<double>{6.0, 8.0});
    REQUIRE(frobenius_norm(a) == 5.0);
    REQUIRE(entrywise_l1(a) == 7.0);

    auto half = covector<rational>({rational(1, 2), rational(-3, 4)});
    auto d = tensor_to_double(half);
    REQUIRE(d.data == std::vector<double>{0.5, -0.75});
}

TEST_CASE("shape validation") {
    auto a = covector<rational>({rational(1), rational(2)});
    auto c3 = covector<rational>({rational(1), rational(2), rational(3)});
    REQUIRE_THROWS_AS(tensor_add(a, c3), input_error);
    REQUIRE_THROWS_AS(tensor_product(a, c3), input_error);
    REQUIRE_THROWS_AS(make_tensor<rational>(1, 0, {}), input_error);
    REQUIRE_THROWS_AS(make_tensor<rational>(0, 0, {0}), input_error);
    REQUIRE_THROWS_AS(permute_cov(a, {0, 1}), input_error);
    auto B = make_tensor<rational>(2, 2, {});
    REQUIRE_THROWS_AS(permute_cov(B, {0, 0}), input_error);
    auto M = rmatrix({rational(1), rational(0), rational(0), rational(1)});
    auto v3 = make_tensor<rational>(1, 3, {3});
    REQUIRE_THROWS_AS(contract(M, v3), input_error);
    REQUIRE_THROWS_AS(symmetric_product<rational>({a, c3}), input_error);
    REQUIRE_THROWS_AS(symmetrize_first(B, 3), input_error);
}
