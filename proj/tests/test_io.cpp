#include <doctest.h>

#include <sstream>

#include "babai/io.hpp"
#include "test_support.hpp"

using namespace babai;

TEST_SUITE("io") {

TEST_CASE("matrix round-trips bit exactly through the text format") {
  StreamRng rng(11, 0);
  std::vector<double> e(12);
  for (double& v : e) v = rng.next_gaussian() * std::pow(10.0, rng.next_int(-8, 8));
  const DenseMatrix m(3, 4, std::move(e));

  std::stringstream ss;
  write_matrix(ss, m);
  const DenseMatrix back = read_matrix(ss);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("parse failures carry context") {
  std::stringstream empty("");
  CHECK_THROWS_AS(read_matrix(empty), ParseError);

  std::stringstream ragged("1 2\n3\n");
  CHECK_THROWS_AS(read_matrix(ragged), ParseError);

  std::stringstream junk("1 banana\n");
  CHECK_THROWS_AS(read_matrix(junk), ParseError);

  std::stringstream two_lines("1 2\n3 4\n");
  CHECK_THROWS_AS(read_vector(two_lines), ParseError);
}

TEST_CASE("vector format is a single line") {
  std::stringstream ss("0.5 -1.25 3\n");
  const auto v = read_vector(ss);
  REQUIRE(v.size() == 3);
  CHECK(v[1] == -1.25);
}

TEST_CASE("try_upper_triangular accepts exactly the triangular inputs") {
  CHECK(try_upper_triangular(DenseMatrix{{1, 2}, {0, 3}}).has_value());
  CHECK_FALSE(try_upper_triangular(DenseMatrix{{1, 2}, {0.001, 3}}).has_value());
  CHECK_FALSE(try_upper_triangular(DenseMatrix{{1, 2}, {0, -3}}).has_value());
  CHECK_FALSE(try_upper_triangular(DenseMatrix(2, 3)).has_value());
}

}  // TEST_SUITE
