// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <sstream>
#include <gtest/gtest.h>
#include "numrad/matrix_market.hpp"
#include "numrad/random.hpp"

using namespace numrad;

namespace
{

Matrix parse(const std::string &text)
{
  std::istringstream in(text);
  return read_matrix_market(in);
}

}  // namespace

TEST(MatrixMarket, ReadsRealArrayColumnMajor)
{
  const Matrix a = parse("%%MatrixMarket matrix array real general\n% comment\n2 2\n1\n2\n3\n4\n");
  EXPECT_EQ(a(0, 0), Complex(1.0));
  EXPECT_EQ(a(1, 0), Complex(2.0));
  EXPECT_EQ(a(0, 1), Complex(3.0));
  EXPECT_EQ(a(1, 1), Complex(4.0));
  EXPECT_TRUE(a.is_real());
}

TEST(MatrixMarket, ReadsComplexCoordinate)
{
  const Matrix a =
      parse("%%MatrixMarket matrix coordinate complex general\n3 3 2\n1 2 1.5 -2\n3 1 0 1\n");
  EXPECT_EQ(a(0, 1), Complex(1.5, -2.0));
  EXPECT_EQ(a(2, 0), Complex(0.0, 1.0));
  EXPECT_EQ(a(1, 1), Complex(0.0));
  EXPECT_FALSE(a.is_real());
}

TEST(MatrixMarket, ExpandsSymmetryVariants)
{
  const Matrix s = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 5\n2 1 7\n");
  EXPECT_EQ(s(0, 1), Complex(7.0));
  const Matrix k =
      parse("%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 3\n");
  EXPECT_EQ(k(0, 1), Complex(-3.0));
  const Matrix h =
      parse("%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 1 0\n2 1 0 2\n");
  EXPECT_EQ(h(0, 1), Complex(0.0, -2.0));
  const Matrix sa = parse("%%MatrixMarket matrix array integer symmetric\n2 2\n1\n2\n3\n");
  EXPECT_EQ(sa(0, 1), Complex(2.0));
  EXPECT_EQ(sa(1, 1), Complex(3.0));
}

TEST(MatrixMarket, RejectsBadInput)
{
  EXPECT_THROW(parse(""), IoError);
  EXPECT_THROW(parse("%%MatrixMarket vector array real general\n2\n1\n2\n"), IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n"),
               IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix array real general\n2 2\n1\n2\n"), IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"), IoError);
  EXPECT_THROW(parse("%%MatrixMarket matrix array pattern general\n1 1\n"), IoError);
  EXPECT_THROW(read_matrix_market("/nonexistent/a.mtx"), IoError);
}

TEST(MatrixMarket, RoundTripsBitExactly)
{
  for (Field field : {Field::Real, Field::Complex})
  {
    const Matrix a = gen_random_matrix(6, field, 77);
    std::stringstream buf;
    write_matrix_market(buf, a);
    const Matrix b = read_matrix_market(buf);
    EXPECT_TRUE(a.entries() == b.entries());
    EXPECT_EQ(a.is_real(), b.is_real());
  }
}

TEST(MatrixMarket, RoundTripsThroughFile)
{
  const auto path = std::filesystem::temp_directory_path() / "numrad_mm_roundtrip.mtx";
  const Matrix a = gen_random_matrix(3, Field::Complex, 1);
  write_matrix_market(path.string(), a);
  EXPECT_TRUE(read_matrix_market(path.string()).entries() == a.entries());
  std::filesystem::remove(path);
}
