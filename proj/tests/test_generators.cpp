#include "doctest.h"

#include <map>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "cfstammer/generators.hpp"
#include "cfstammer/words.hpp"

using namespace cfstammer;

namespace {

std::unique_ptr<WordStream> theta_stream(const Word& pattern) {
  return std::make_unique<PeriodicStream>(pattern);
}

// Closed forms for floor(n * theta) at the three quadratic test angles,
// via integer square roots.
BigInt floor_golden(std::uint64_t n) {  // theta = (sqrt(5) - 1) / 2
  const BigInt bn = n;
  const BigInt sq = 5 * bn * bn;
  return (boost::multiprecision::sqrt(sq) - bn) / 2;
}
BigInt floor_sqrt2m1(std::uint64_t n) {
  const BigInt bn = n;
  const BigInt sq = 2 * bn * bn;
  return boost::multiprecision::sqrt(sq) - bn;
}
BigInt floor_sqrt3m1(std::uint64_t n) {
  const BigInt bn = n;
  const BigInt sq = 3 * bn * bn;
  return boost::multiprecision::sqrt(sq) - bn;
}

}  // namespace

TEST_CASE("beatty floors: examples and closed-form cross-check") {
  BeattyOracle golden(theta_stream({1}));
  CHECK(golden.floor_mult(1) == 0);
  CHECK(golden.floor_mult(2) == 1);
  CHECK(golden.floor_mult(5) == 3);

  SUBCASE("single-shot floor agrees with the oracle") {
    PeriodicStream ones({1});
    CHECK(floor_n_theta(ones, 5) == 3);
  }

  SUBCASE("three quadratic angles, n up to 3000") {
    BeattyOracle g(theta_stream({1}));
    BeattyOracle s2(theta_stream({2}));
    BeattyOracle s3(theta_stream({1, 2}));
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      REQUIRE(g.floor_mult(n) == floor_golden(n));
      REQUIRE(s2.floor_mult(n) == floor_sqrt2m1(n));
      REQUIRE(s3.floor_mult(n) == floor_sqrt3m1(n));
    }
  }

  SUBCASE("rational theta is rejected once its expansion ends") {
    auto finite = std::make_unique<FiniteWordStream>(Word{1, 1});
    BeattyOracle oracle(std::move(finite));
    CHECK_THROWS_AS(oracle.floor_mult(1000000), StreamExhausted);
  }
}

TEST_CASE("davison words: heads and letter balance") {
  auto d2 = davison_stream(theta_stream({1}), 2);
  CHECK(take(*d2, 8) == Word{1, 2, 2, 1, 2, 2, 1, 1});

  auto d3 = davison_stream(theta_stream({1}), 3);
  CHECK(take(*d3, 8) == Word{1, 2, 2, 3, 1, 1, 2, 2});

  SUBCASE("both letters keep appearing") {
    auto s = davison_stream(theta_stream({1}), 2);
    const Word w = take(*s, 1000);
    std::size_t ones = 0;
    for (const Letter x : w) ones += (x == 1);
    CHECK(ones > 300);
    CHECK(1000 - ones > 300);
  }

  SUBCASE("modulus must be positive") {
    CHECK_THROWS_AS(davison_stream(theta_stream({1}), 0), std::invalid_argument);
  }
}

TEST_CASE("floor identities hold exhaustively at small index") {
  SUBCASE("golden") {
    const auto rep = verify_floor_identities({1}, 8, 20000);
    CHECK(rep.pass);
    CHECK(rep.first_failure.empty());
    CHECK(rep.shift_checked == 133);
    CHECK(rep.scaled_checked == 266);
    CHECK(rep.telescoped_checked == 309);
  }
  SUBCASE("sqrt3 - 1") {
    const auto rep = verify_floor_identities({1, 2}, 6, 5000);
    CHECK(rep.pass);
    CHECK(rep.shift_checked > 0);
    CHECK(rep.scaled_checked > 0);
    CHECK(rep.telescoped_checked > 0);
  }
}

TEST_CASE("automatic sequences: direct heads and the morphic cross-check") {
  auto rs = rudin_shapiro_stream(1, 2);
  CHECK(take(*rs, 8) == Word{1, 1, 1, 2, 1, 1, 2, 1});

  auto bs = baum_sweet_stream(1, 2);
  CHECK(take(*bs, 12) == Word{2, 2, 1, 2, 2, 1, 1, 2, 1, 2, 1, 1});

  SUBCASE("output letters are arbitrary") {
    auto bs59 = baum_sweet_stream(5, 9);
    CHECK(take(*bs59, 6) == Word{9, 9, 5, 9, 9, 5});
    CHECK_THROWS_AS(rudin_shapiro_stream(0, 2), std::invalid_argument);
  }

  SUBCASE("fixed-point route agrees letter for letter") {
    auto rs_direct = rudin_shapiro_stream(1, 2);
    auto rs_morphic = coding_apply(rs_coding(1, 2), fixed_point_stream(rs_morphism(), 1));
    CHECK(take(*rs_direct, 20000) == take(*rs_morphic, 20000));

    auto bs_direct = baum_sweet_stream(1, 2);
    auto bs_morphic = coding_apply(bs_coding(1, 2), fixed_point_stream(bs_morphism(), 1));
    CHECK(take(*bs_direct, 20000) == take(*bs_morphic, 20000));
  }
}

TEST_CASE("paperfolding words") {
  SUBCASE("all-plus head") {
    auto s = paperfolding_stream({constant_signs(+1), 1, 2});
    CHECK(take(*s, 7) == Word{1, 1, 2, 1, 1, 2, 2});
  }

  SUBCASE("periodic instructions (+,-,+)") {
    auto s = paperfolding_stream({periodic_signs({+1, -1, +1}), 1, 2});
    CHECK(take(*s, 7) == Word{1, 2, 2, 1, 1, 1, 2});
  }

  SUBCASE("every iterate is a prefix of the limit") {
    auto longer = paperfolding_stream({seeded_signs(99), 1, 2});
    auto shorter = paperfolding_stream({seeded_signs(99), 1, 2});
    const Word w31 = take(*longer, 31);
    const Word w15 = take(*shorter, 15);
    CHECK(Word(w31.begin(), w31.begin() + 15) == w15);
  }

  SUBCASE("two folding steps expand as expected") {
    std::mt19937_64 gen(44);
    for (int trial = 0; trial < 20; ++trial) {
      SignedWord v(gen() % 6, +1);
      for (auto& e : v) e = (gen() & 1) ? Sign{+1} : Sign{-1};
      const Sign e0 = (gen() & 1) ? Sign{+1} : Sign{-1};
      const Sign e1 = (gen() & 1) ? Sign{+1} : Sign{-1};

      SignedWord expect = v;
      expect.push_back(e1);
      for (const SignedWord& part : {negate(mirror(v)), SignedWord{e0}, v}) {
        expect.insert(expect.end(), part.begin(), part.end());
      }
      SignedWord v_e1 = v;
      v_e1.push_back(e1);
      const SignedWord tail = negate(mirror(v_e1));
      expect.insert(expect.end(), tail.begin(), tail.end());

      CHECK(fold_once(e0, fold_once(e1, v)) == expect);
    }
  }

  SUBCASE("invalid systems") {
    CHECK_THROWS_AS(periodic_signs({}), std::invalid_argument);
    CHECK_THROWS_AS(constant_signs(0), std::invalid_argument);
    CHECK_THROWS_AS(paperfolding_stream({constant_signs(+1), 0, 2}), std::invalid_argument);
  }
}

TEST_CASE("perturbed-symmetry words") {
  SUBCASE("one symmetry application") {
    const PerturbedSymmetry reflect{{{3}}, {InsertMode::R}};
    CHECK(apply_symmetry(reflect, {1, 2}) == Word{1, 2, 3, 2, 1});
    const PerturbedSymmetry extend{{{3}}, {InsertMode::E}};
    CHECK(apply_symmetry(extend, {1, 2}) == Word{1, 2, 3, 1, 2});
  }

  SUBCASE("length recurrence |S(w)| = (k+1)|w| + sum |x_i|") {
    std::mt19937_64 gen(55);
    std::uniform_int_distribution<Letter> letter(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
      PerturbedSymmetry sym;
      const std::size_t k = 1 + gen() % 3;
      std::size_t insert_total = 0;
      for (std::size_t i = 0; i < k; ++i) {
        Word x(gen() % 4, 0);
        for (auto& c : x) c = letter(gen);
        insert_total += x.size();
        sym.inserts.push_back(std::move(x));
        sym.modes.push_back((gen() & 1) ? InsertMode::E : InsertMode::R);
      }
      Word w(1 + gen() % 5, 0);
      for (auto& c : w) c = letter(gen);
      CHECK(apply_symmetry(sym, w).size() == (k + 1) * w.size() + insert_total);
    }
  }

  SUBCASE("iterated system head") {
    PerturbedSystem sys{Alphabet({1, 2, 3}),
                        {1, 2},
                        {PerturbedSymmetry{{{3}}, {InsertMode::R}}},
                        periodic_indices({0})};
    auto s = perturbed_symmetry_stream(std::move(sys));
    CHECK(take(*s, 11) == Word{1, 2, 3, 2, 1, 3, 1, 2, 3, 2, 1});
  }

  SUBCASE("palindromic insert with reflection gives a periodic word") {
    PerturbedSystem sys{Alphabet({1, 2, 3}),
                        {1, 2},
                        {PerturbedSymmetry{{{3, 1, 3}}, {InsertMode::R}}},
                        periodic_indices({0})};
    auto s = perturbed_symmetry_stream(std::move(sys));
    const Word expect{1, 2, 3, 1, 3, 2, 1, 3, 1, 3};
    Word twice = expect;
    twice.insert(twice.end(), expect.begin(), expect.end());
    CHECK(take(*s, 20) == twice);
  }

  SUBCASE("prefixes stabilize across longer reads") {
    auto make = [] {
      PerturbedSystem sys{Alphabet({1, 2, 3}),
                          {1, 2, 3},
                          {PerturbedSymmetry{{{2}, {}}, {InsertMode::R, InsertMode::E}},
                           PerturbedSymmetry{{{1, 3}}, {InsertMode::E}}},
                          periodic_indices({0, 1})};
      return perturbed_symmetry_stream(std::move(sys));
    };
    auto a = make();
    auto b = make();
    const Word w400 = take(*a, 400);
    const Word w90 = take(*b, 90);
    CHECK(Word(w400.begin(), w400.begin() + 90) == w90);
  }

  SUBCASE("invalid systems") {
    CHECK_THROWS_AS(perturbed_symmetry_stream(PerturbedSystem{
                        Alphabet({1, 2}), {}, {PerturbedSymmetry{{{1}}, {InsertMode::E}}},
                        periodic_indices({0})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(perturbed_symmetry_stream(PerturbedSystem{
                        Alphabet({1, 2}), {1}, {PerturbedSymmetry{{{3}}, {InsertMode::E}}},
                        periodic_indices({0})}),
                    std::invalid_argument);
    // A bad schedule index only surfaces once the stream needs to grow.
    auto bad_schedule = perturbed_symmetry_stream(PerturbedSystem{
        Alphabet({1, 2}), {1}, {PerturbedSymmetry{{{2}}, {InsertMode::E}}},
        periodic_indices({1})});
    CHECK_THROWS_AS(take(*bad_schedule, 100), std::invalid_argument);
    CHECK_THROWS_AS(periodic_indices({}), std::invalid_argument);
    CHECK_THROWS_AS(seeded_indices(1, 0), std::invalid_argument);
  }
}

TEST_CASE("concatenation family") {
  SUBCASE("first block once, later blocks twice") {
    ConcatFamily fam{Alphabet({1, 2}), 1.5,
                     fixed_blocks({{1, 2}, {2, 1, 1, 2}, {1, 2, 2, 1, 2, 1, 1, 2, 1, 2, 2, 1}})};
    auto s = concat_family_stream(fam);
    CHECK(take(*s, 10) == Word{1, 2, 2, 1, 1, 2, 2, 1, 1, 2});

    // A block source is stateful, so the cache gets its own family.
    ConcatFamily fam2{Alphabet({1, 2}), 1.5, fixed_blocks({{1, 2}, {2, 1, 1, 2}})};
    ConcatBlocks blocks(fam2);
    CHECK(blocks.block(1) == Word{1, 2});
    CHECK(blocks.block(2) == Word{2, 1, 1, 2});
    CHECK_THROWS_AS(blocks.block(0), std::invalid_argument);
  }

  SUBCASE("lazy validation rejects malformed block lists") {
    auto pull_some = [](ConcatFamily fam) {
      auto s = concat_family_stream(fam);
      take(*s, 12);
    };
    // Unequal letter counts in the second block.
    CHECK_THROWS_AS(pull_some({Alphabet({1, 2}), 1.5, fixed_blocks({{1, 2}, {1, 1, 2, 1}})}),
                    std::invalid_argument);
    // Growth ratio not met: |W2| = 2 does not exceed 1.5 * |W1| = 3.
    CHECK_THROWS_AS(pull_some({Alphabet({1, 2}), 1.5, fixed_blocks({{1, 2}, {1, 2}, {1, 2}})}),
                    std::invalid_argument);
    // Letter outside the alphabet.
    CHECK_THROWS_AS(pull_some({Alphabet({1, 2}), 1.5, fixed_blocks({{1, 3}})}),
                    std::invalid_argument);
    // Empty block.
    CHECK_THROWS_AS(pull_some({Alphabet({1, 2}), 1.5, fixed_blocks({{}})}),
                    std::invalid_argument);
    // Exhausted source.
    CHECK_THROWS_AS(pull_some({Alphabet({1, 2}), 1.5, fixed_blocks({{1, 2}})}), StreamExhausted);
  }

  SUBCASE("random equal-count blocks satisfy every designed invariant") {
    const Alphabet abc({1, 2, 3});
    auto source = random_equal_blocks(abc, 4.0, 2024, true);
    Word prev;
    for (int n = 1; n <= 5; ++n) {
      const Word w = source->next_block();
      REQUIRE_FALSE(w.empty());
      CHECK(w.size() % 2 == 1);  // odd lengths requested
      std::map<Letter, std::size_t> counts;
      for (const Letter x : w) counts[x]++;
      REQUIRE(counts.size() == 3);
      CHECK(counts[1] == counts[2]);
      CHECK(counts[2] == counts[3]);
      if (!prev.empty()) {
        CHECK(w.size() > 4.0 * prev.size());
        CHECK(w.front() != prev.front());
        CHECK(w.back() != prev.back());
      }
      prev = w;
    }
  }

  SUBCASE("even-length blocks over an even alphabet") {
    const Alphabet ab({1, 2});
    auto source = random_equal_blocks(ab, 4.0, 9, false);
    Word prev;
    for (int n = 1; n <= 4; ++n) {
      const Word w = source->next_block();
      std::size_t ones = 0;
      for (const Letter x : w) ones += (x == 1);
      CHECK(2 * ones == w.size());
      if (!prev.empty()) CHECK(w.size() > 4.0 * prev.size());
      prev = w;
    }
    CHECK_THROWS_AS(random_equal_blocks(ab, 4.0, 9, true), std::invalid_argument);
    CHECK_THROWS_AS(random_equal_blocks(ab, 1.0, 9, false), std::invalid_argument);
  }
}
