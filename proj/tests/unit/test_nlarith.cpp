#include "doctest.h"

#include <algorithm>
#include <set>

#include "hsf/field.hpp"
#include "hsf/nlarith.hpp"

using namespace hsf;

namespace {

std::vector<long> ds(const std::vector<DiscriminantValue>& v) {
  std::vector<long> out;
  for (auto& x : v) out.push_back(x.d);
  return out;
}

std::set<long> admissible_below(FourfoldKind k, long bound) {
  std::set<long> s;
  for (long d = 1; d < bound; ++d)
    if (is_admissible(k, d)) s.insert(d);
  return s;
}

}  // namespace

TEST_CASE("Noether-Lefschetz value streams") {
  CHECK(ds(nl_values(FourfoldKind::Cubic, 44)) == std::vector<long>{8, 12, 14, 18, 20, 24, 26, 30, 32, 36, 38, 42, 44});
  CHECK(ds(nl_values(FourfoldKind::GM, 40)) == std::vector<long>{10, 12, 16, 18, 20, 24, 26, 28, 32, 34, 36, 40});
  auto gm = nl_values(FourfoldKind::GM, 12);
  CHECK(gm[0].labels == std::vector<std::string>{"'", "''"});
  CHECK(gm[1].labels.empty());
  for (auto k : {FourfoldKind::Cubic, FourfoldKind::GM}) {
    auto v = ds(nl_values(k, 2000));
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
    long period = k == FourfoldKind::Cubic ? 6 : 8;
    for (long d : v) CHECK(std::count(v.begin(), v.end(), d + period) == (d + period <= 2000 ? 1 : 0));
  }
}

TEST_CASE("admissible values below 86") {
  CHECK(admissible_below(FourfoldKind::Cubic, 86) == std::set<long>{14, 26, 38, 42, 62, 74, 78});
  CHECK(admissible_below(FourfoldKind::GM, 86) == std::set<long>{10, 20, 26, 34, 50, 52, 58, 68, 74, 82});
  CHECK(is_admissible(FourfoldKind::Cubic, 86));
  for (long d : {8, 12, 18, 20, 24, 30, 32, 36, 44, 48, 50, 54, 56, 60, 66, 68, 72, 80, 84})
    CHECK_FALSE(is_admissible(FourfoldKind::Cubic, d));
  for (long d = 1; d < 3000; ++d)
    for (auto k : {FourfoldKind::Cubic, FourfoldKind::GM})
      if (is_admissible(k, d)) CHECK(is_nl_value(k, d));
}

TEST_CASE("Addington form") {
  auto f = addington_form(38);
  REQUIRE(f);
  CHECK(f->a == 7);
  CHECK(f->n == 30);
  for (auto [d, n] : std::vector<std::pair<long, long>>{{14, 2}, {26, 3}, {42, 4}, {62, 5}}) {
    auto g = addington_form(d);
    REQUIRE(g);
    CHECK(g->a == 1);
    CHECK(g->n == n);
  }
  CHECK_FALSE(addington_form(74));
  // one direction only; d > 6 as for the value stream
  for (long d = 8; d <= 10000; d += 2)
    if (addington_form(d)) CHECK(is_admissible(FourfoldKind::Cubic, d));
}

TEST_CASE("admissible components") {
  CHECK(kuznetsov_list(FourfoldKind::Cubic, 90) ==
        std::vector<std::string>{"C14", "C26", "C38", "C42", "C62", "C74", "C78", "C86"});
  CHECK(kuznetsov_list(FourfoldKind::GM, 33) ==
        std::vector<std::string>{"GM10'", "GM10''", "GM20", "GM26'", "GM26''"});
  auto l = kuznetsov_list(FourfoldKind::GM, 35);
  CHECK(std::vector<std::string>(l.begin(), l.begin() + 6) ==
        std::vector<std::string>{"GM10'", "GM10''", "GM20", "GM26'", "GM26''", "GM34'"});
  CHECK(kuznetsov_list(FourfoldKind::Cubic, 13).empty());
  CHECK_THROWS_AS(parse_kind("quartic"), InputError);
}
