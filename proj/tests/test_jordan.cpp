#include <gtest/gtest.h>

#include <cmath>

#include "perfro/eigen.hpp"
#include "perfro/jordan.hpp"
#include "support/oracles.hpp"

using namespace perfro;
namespace pt = perfro::testing;

namespace {

const double kSqrt17 = std::sqrt(17.0);
const double kRho = (1 + kSqrt17) / 2;
const double kMinor = (1 - kSqrt17) / 2;

}  // namespace

TEST(JordanBlock, OneByOne) { EXPECT_EQ(jordan_block(5.0, 1), (MatC{{5}})); }

TEST(JordanBlock, ThreeByThree) {
  EXPECT_EQ(jordan_block(2.0, 3), (MatC{{2, 1, 0}, {0, 2, 1}, {0, 0, 2}}));
}

TEST(JordanBlock, Nilpotent) {
  const MatC n = jordan_block(0.0, 2);
  EXPECT_EQ(n, (MatC{{0, 1}, {0, 0}}));
  EXPECT_EQ(mat_mul(n, n), MatC(2, 2));
}

TEST(RotationBlock, Examples) {
  EXPECT_EQ(rotation_block(Complex(0, 1)), (MatR{{0, 1}, {-1, 0}}));
  EXPECT_EQ(rotation_block(Complex(3, 4)), (MatR{{3, 4}, {-4, 3}}));
  EXPECT_EQ(rotation_block(7.0), (MatR{{7, 0}, {0, 7}}));
}

TEST(RealJordanBlock, SizeOneIsRotation) {
  EXPECT_EQ(real_jordan_block(Complex(0, 1), 1), (MatR{{0, 1}, {-1, 0}}));
}

TEST(RealJordanBlock, SizeTwo) {
  EXPECT_EQ(real_jordan_block(Complex(1, 1), 2),
            (MatR{{1, 1, 1, 0}, {-1, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, -1, 1}}));
}

TEST(RealJordanBlock, SpectrumIsPairWithMultiplicity) {
  for (const Complex lambda : {Complex(0, 1), Complex(1, 1), Complex(-2, 0.5)}) {
    for (std::size_t j = 1; j <= 3; ++j) {
      const VecC values = eigen_decompose(real_jordan_block(lambda, j)).values;
      VecC expected;
      for (std::size_t k = 0; k < j; ++k) {
        expected.push_back(lambda);
        expected.push_back(std::conj(lambda));
      }
      EXPECT_LT(pt::cluster_mean_distance(values, expected), 1e-9) << lambda << " j=" << j;
      // Individual eigenvalues of a size-j block scatter like eps^(1/j).
      EXPECT_LT(pt::multiset_distance(values, expected), 1e-4);
    }
  }
}

TEST(RealJordanBlock, SimilarToComplexJordanPair) {
  // Proposition setting: C_j(lambda) ~ J_j(lambda) + J_j(conj lambda).
  pt::Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    const Complex lambda(pt::uniform(rng, -2, 2), pt::uniform(rng, 0.1, 2));
    const auto j = static_cast<std::size_t>(pt::uniform_int(rng, 1, 4));
    const auto lhs = pt::char_poly(pt::complexify(real_jordan_block(lambda, j)));
    const auto rhs = pt::char_poly(
        pt::complex_direct_sum(jordan_block(lambda, j), jordan_block(std::conj(lambda), j)));
    ASSERT_EQ(lhs.size(), rhs.size());
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      EXPECT_LT(std::abs(lhs[k] - rhs[k]), 1e-9 * std::max(1.0, std::abs(rhs[k])))
          << "coefficient " << k;
    }
  }
}

TEST(JordanSpec, Validation) {
  EXPECT_THROW(JordanSpec({{1.0, 0}}, {}), InvalidSpecError);
  EXPECT_THROW(JordanSpec({}, {{Complex(1, 0), 1}}), InvalidSpecError);
  EXPECT_THROW(JordanSpec({}, {{Complex(1, -1), 1}}), InvalidSpecError);
  EXPECT_THROW(JordanSpec({{NAN, 1}}, {}), InvalidSpecError);
}

TEST(JordanSpec, CountsAndIndex) {
  const JordanSpec spec({{2.0, 2}, {2.0, 1}, {-1.0, 1}}, {{Complex(0, 1), 3}});
  EXPECT_EQ(spec.total_dimension(), 10u);
  EXPECT_EQ(spec.real_count(), 4u);
  EXPECT_EQ(spec.pair_count(), 3u);
  EXPECT_FALSE(spec.diagonalizable());
  EXPECT_EQ(spec.index(2.0), 2);
  EXPECT_EQ(spec.index(-1.0), 1);
  EXPECT_EQ(spec.index(Complex(0, -1)), 3);
  EXPECT_EQ(spec.index(5.0), 0);
  EXPECT_EQ(spec.eigenvalues().size(), 10u);
  EXPECT_DOUBLE_EQ(spec.spectral_radius(), 2.0);
  const auto distinct = spec.distinct_eigenvalues();
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(AssembleRealJordan, SingleEigenvalue) {
  EXPECT_EQ(assemble_real_jordan(JordanSpec({{3.0, 1}}, {})), (MatR{{3}}));
}

TEST(AssembleRealJordan, RealThenComplex) {
  const JordanSpec spec({{2.0, 2}}, {{Complex(0, 1), 1}});
  EXPECT_EQ(assemble_real_jordan(spec),
            (MatR{{2, 1, 0, 0}, {0, 2, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}));
}

TEST(AssembleRealJordan, BlockDiagonalStructure) {
  pt::Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    const auto planted = pt::plant_dominant_root(rng);
    const JordanSpec& spec = planted.spec;
    const MatR j = assemble_real_jordan(spec);
    std::vector<std::size_t> block_of;
    std::size_t id = 0;
    for (const auto& b : spec.real_blocks()) block_of.insert(block_of.end(), b.size, id++);
    for (const auto& b : spec.complex_blocks()) block_of.insert(block_of.end(), 2 * b.size, id++);
    ASSERT_EQ(block_of.size(), j.rows());
    for (std::size_t r = 0; r < j.rows(); ++r)
      for (std::size_t c = 0; c < j.cols(); ++c)
        if (block_of[r] != block_of[c]) EXPECT_EQ(j(r, c), 0.0);
  }
}

TEST(SynthesizeMatrix, OneByOne) {
  const auto s = synthesize_matrix(JordanSpec({{kRho, 1}}, {}), MatR{{1}});
  EXPECT_EQ(s.matrix, (MatR{{kRho}}));
  EXPECT_FALSE(s.condition_warning);
}

TEST(SynthesizeMatrix, RoundTripsB) {
  const MatR b{{2, 1}, {2, -1}};
  const auto d = eigen_decompose(b);
  std::vector<RealBlock> blocks;
  MatR r(2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    blocks.push_back({d.values[k].real(), 1});
    for (std::size_t i = 0; i < 2; ++i) r(i, k) = d.vectors(i, k).real();
  }
  const auto s = synthesize_matrix(JordanSpec(blocks, {}), r);
  EXPECT_LT(max_abs_diff(s.matrix, b), 1e-9);
}

TEST(SynthesizeMatrix, TransformErrors) {
  const JordanSpec spec({{1.0, 1}, {2.0, 1}}, {});
  EXPECT_THROW(synthesize_matrix(spec, MatR{{1, 1}, {1, 1}}), SingularMatrixError);
  EXPECT_THROW(synthesize_matrix(spec, MatR::identity(3)), DimensionError);
  EXPECT_THROW(synthesize_matrix(spec, MatR{{1, 1}, {1, 1 + 1e-8}}), IllConditionedError);
  const auto warned = synthesize_matrix(spec, MatR{{1, 1}, {1, 1 + 1e-7}});
  EXPECT_TRUE(warned.condition_warning);
}

TEST(SynthesizeMatrix, SpectrumRoundTrip) {
  pt::Rng rng(47);
  for (int t = 0; t < 150; ++t) {
    pt::PlantOptions opt;
    opt.max_dimension = 10;
    const auto planted = pt::plant_dominant_root(rng, opt);
    const JordanSpec& spec = planted.spec;
    const std::size_t n = spec.total_dimension();
    const MatR r = (t % 2 == 0) ? pt::householder_orthogonal(rng, n)
                                : random_orthogonal_transform(spec, static_cast<std::uint64_t>(t));
    const auto s = synthesize_matrix(spec, r);
    const VecC computed = eigen_decompose(s.matrix).values;
    if (spec.diagonalizable()) {
      EXPECT_LT(pt::multiset_distance(computed, spec.eigenvalues()), 1e-7);
    } else {
      // Defective blocks only determine their cluster to high accuracy.
      EXPECT_LT(pt::cluster_mean_distance(computed, spec.eigenvalues()), 1e-7);
    }
    EXPECT_LT(norm_inf(s.factors.reconstruct() - s.matrix), 1e-12 * std::max(1.0, norm_inf(s.matrix)));
  }
}

TEST(ExtractDiagonalizable, AlreadyDiagonal) {
  const auto f = extract_diagonalizable_structure(MatR{{2, 0}, {0, 1}});
  EXPECT_EQ(f.spec(), JordanSpec({{2.0, 1}, {1.0, 1}}, {}));
  EXPECT_LT(max_abs_diff(f.transform(), MatR::identity(2)), 1e-15);
}

TEST(ExtractDiagonalizable, B) {
  const MatR b{{2, 1}, {2, -1}};
  const auto f = extract_diagonalizable_structure(b);
  ASSERT_EQ(f.spec().real_blocks().size(), 2u);
  EXPECT_TRUE(f.spec().complex_blocks().empty());
  VecC got;
  for (const auto& blk : f.spec().real_blocks()) {
    EXPECT_EQ(blk.size, 1);
    got.push_back(blk.lambda);
  }
  EXPECT_LT(pt::multiset_distance(got, {kRho, kMinor}), 1e-12);
  EXPECT_LT(norm_inf(f.reconstruct() - b), 1e-12);
}

TEST(ExtractDiagonalizable, DefectiveRejected) {
  try {
    extract_diagonalizable_structure(MatR{{0, 1}, {0, 0}});
    FAIL() << "expected DefectiveMatrixError";
  } catch (const DefectiveMatrixError& e) {
    EXPECT_NE(std::string(e.what()).find("synthesize"), std::string::npos) << e.what();
  }
  EXPECT_THROW(extract_diagonalizable_structure(MatR{{3, 1, 0}, {0, 3, 0}, {0, 0, 1}}),
               DefectiveMatrixError);
}

TEST(ExtractDiagonalizable, RepeatedSemisimpleEigenvalueAccepted) {
  const auto f = extract_diagonalizable_structure(MatR{{2, 0, 0}, {0, 2, 0}, {0, 0, -1}});
  EXPECT_TRUE(f.spec().diagonalizable());
  EXPECT_EQ(f.spec().total_dimension(), 3u);
}

TEST(ExtractDiagonalizable, ComplexPairsUseRealAndImaginaryColumns) {
  const MatR rot{{0, 1}, {-1, 0}};
  const auto f = extract_diagonalizable_structure(rot);
  ASSERT_EQ(f.spec().complex_blocks().size(), 1u);
  EXPECT_NEAR(std::abs(f.spec().complex_blocks()[0].lambda - Complex(0, 1)), 0.0, 1e-12);
  EXPECT_LT(norm_inf(f.reconstruct() - rot), 1e-12);
}

TEST(ExtractDiagonalizable, InvertsSynthesis) {
  pt::Rng rng(53);
  int checked = 0;
  while (checked < 150) {
    pt::PlantOptions opt;
    opt.max_block = 1;
    opt.max_dimension = 10;
    const auto planted = pt::plant_dominant_root(rng, opt);
    const std::size_t n = planted.spec.total_dimension();
    const auto s = synthesize_matrix(planted.spec, pt::householder_orthogonal(rng, n));
    const auto f = extract_diagonalizable_structure(s.matrix);
    EXPECT_TRUE(f.spec().diagonalizable());
    EXPECT_LT(pt::multiset_distance(f.spec().eigenvalues(), planted.spec.eigenvalues()), 1e-7);
    EXPECT_LE(norm_inf(f.reconstruct() - s.matrix), 1e-6 * std::max(1.0, norm_inf(s.matrix)));
    ++checked;
  }
}

TEST(RandomOrthogonalTransform, OrthogonalWithPositiveLeadingColumn) {
  pt::Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    const auto planted = pt::plant_dominant_root(rng);
    const auto seed = static_cast<std::uint64_t>(t);
    const MatR q = random_orthogonal_transform(planted.spec, seed);
    const std::size_t n = q.rows();
    EXPECT_LT(norm_inf(transpose(q) * q - MatR::identity(n)), 1e-12);
    const std::size_t col = leading_real_column(planted.spec);
    ASSERT_LT(col, n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_GT(q(i, col), 0.0);
    EXPECT_EQ(q, random_orthogonal_transform(planted.spec, seed));
  }
}

TEST(RandomOrthogonalTransform, LeadingColumnFollowsSpecOrder) {
  const JordanSpec spec({{-3.0, 2}, {1.5, 1}, {0.5, 1}}, {{Complex(0, 1), 1}});
  EXPECT_EQ(leading_real_column(spec), 2u);
  EXPECT_EQ(leading_real_column(JordanSpec({}, {{Complex(0, 1), 1}})), 2u);
}
