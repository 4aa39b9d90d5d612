#include <doctest.h>

#include <atomic>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "gmrfinfo/error.hpp"
#include "gmrfinfo/fft.hpp"
#include "gmrfinfo/fit.hpp"
#include "gmrfinfo/optimize.hpp"
#include "gmrfinfo/parallel.hpp"
#include "gmrfinfo/plotdata.hpp"

using namespace gmrfinfo;

TEST_CASE("least squares line") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LinearFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.points == 4);
}

TEST_CASE("log-log tail fit keeps the top decade") {
  std::vector<double> x, y;
  for (double v = 1; v <= 1000; v *= 1.5) {
    x.push_back(v);
    y.push_back(v < 100 ? 1.0 : 3 * std::pow(v, -0.7));
  }
  const LinearFit f = fit_loglog_tail(x, y);
  CHECK(f.slope == doctest::Approx(-0.7).epsilon(1e-12));
}

TEST_CASE("golden section finds a smooth maximum") {
  const Maximum m = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-9);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(m.value <= 0.0);
}

TEST_CASE("parallel_for covers each index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 7, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 4) throw DomainError("x"); }), DomainError);
  CHECK(default_threads() >= 1);
}

TEST_CASE("fft round trip and known transform") {
  std::vector<std::complex<double>> v(12);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {double(i), 0.5 * double(i % 3)};
  const auto orig = v;
  const std::vector<int> ext{3, 4};
  fft::transform(v, ext, fft::Direction::forward);
  std::complex<double> sum = 0;
  for (const auto& z : orig) sum += z;
  CHECK(std::abs(v[0] - sum) < 1e-12);
  fft::transform(v, ext, fft::Direction::backward);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] / 12.0 - orig[i]) < 1e-13);
}

TEST_CASE("CSV output") {
  Table t;
  t.columns = {"name", "x", "k"};
  t.add({std::string("a,b"), 0.1234567890123456, std::int64_t{3}});
  std::ostringstream out;
  emit_plotdata(t, out);
  CHECK(out.str() == "name,x,k\r\n\"a,b\",0.123456789012,3\r\n");

  Table five;
  five.columns = {"i", "v"};
  for (int i = 0; i < 5; ++i) five.add({std::int64_t{i}, 1.0 / (i + 1)});
  std::ostringstream o5;
  emit_plotdata(five, o5);
  int lines = 0;
  for (char ch : o5.str()) lines += ch == '\n';
  CHECK(lines == 6);
  CHECK(o5.str().rfind("i,v\r\n0,1\r\n1,0.5\r\n", 0) == 0);

  Table bad;
  bad.columns = {"v"};
  bad.add({1.0});
  bad.add({std::nan("")});
  std::ostringstream ob;
  try {
    emit_plotdata(bad, ob);
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  Table quoted;
  quoted.columns = {"s"};
  quoted.add({std::string("say \"hi\"")});
  std::ostringstream oq;
  emit_plotdata(quoted, oq);
  CHECK(oq.str() == "s\r\n\"say \"\"hi\"\"\"\r\n");
  Table empty;
  empty.columns = {"v"};
  std::ostringstream oe;
  CHECK_THROWS_AS(emit_plotdata(empty, oe), DomainError);
  CHECK_THROWS(Table{{"a", "b"}, {}}.add({1.0}));
}
