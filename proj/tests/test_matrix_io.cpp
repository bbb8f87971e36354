#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "core/matrix_io.hpp"
#include "core/types.hpp"
#include "helpers.hpp"

using namespace botoc;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}
}  // namespace

TEST_CASE("format and parse are a bit-exact round trip") {
  Matrix m(2, 3);
  m << Complex(1.0, -2.0), Complex(0.0, 0.0), Complex(-0.5, 1e-17),
      Complex(3.14159265358979312, 2.71828182845904509),
      Complex(1e150, -1e-150), Complex(-0.0, 7.0);
  const std::string text = format_matrix(m);
  std::istringstream in(text);
  const Matrix back = parse_matrix(in, "buffer");
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      REQUIRE(back(i, j) == m(i, j));
}

TEST_CASE("random matrices survive the round trip") {
  const Matrix m = testutil::random_haar(7, 17);
  std::istringstream in(format_matrix(m));
  const Matrix back = parse_matrix(in, "buffer");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      REQUIRE(back(i, j) == m(i, j));
}

TEST_CASE("header carries the shape") {
  Matrix m = Matrix::Zero(3, 1);
  const std::string text = format_matrix(m);
  std::istringstream head(text);
  int rows = 0, cols = 0;
  head >> rows >> cols;
  REQUIRE(rows == 3);
  REQUIRE(cols == 1);
}

TEST_CASE("parser reports malformed input") {
  auto parse_text = [](const std::string& s) {
    std::istringstream in(s);
    return parse_matrix(in, "buffer");
  };
  REQUIRE(code_of([&] { parse_text(""); }) == ErrorCode::Parse);
  REQUIRE(code_of([&] { parse_text("x y\n"); }) == ErrorCode::Parse);
  REQUIRE(code_of([&] { parse_text("1 2\n1+0j\n"); }) == ErrorCode::Parse);
  REQUIRE(code_of([&] { parse_text("1 1\nbroken\n"); }) == ErrorCode::Parse);
  REQUIRE(code_of([&] { parse_text("1 1\n1+2k\n"); }) == ErrorCode::Parse);
  REQUIRE(code_of([&] { parse_text("-1 2\n"); }) == ErrorCode::Parse);
}

TEST_CASE("files round trip and io errors are flagged") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "botoc_io_test";
  fs::create_directories(dir);
  const fs::path file = dir / "m.txt";
  const Matrix m = testutil::random_haar(4, 23);
  save_matrix(file.string(), m);
  const Matrix back = load_matrix(file.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      REQUIRE(back(i, j) == m(i, j));
  REQUIRE(code_of([&] { load_matrix((dir / "absent.txt").string()); }) ==
          ErrorCode::Io);
  fs::remove_all(dir);
}
