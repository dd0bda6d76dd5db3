#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

#include "fraisse/zoo.hpp"

using namespace fraisse::zoo;

namespace {

// Independent oracle: classes as sets {g x g^-1}, built from the multiplication only.
std::size_t brute_class_count(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::size_t count = 0;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++count;
    for (Element h = 0; h < g.order(); ++h) {
      // h^-1 found by search so inv() is not trusted.
      Element hinv = 0;
      while (g.mul(h, hinv) != 0) ++hinv;
      seen[g.mul(g.mul(h, x), hinv)] = true;
    }
  }
  return count;
}

Element elem(const AbelianCarrier& A, std::uint32_t i, Element a) {
  return static_cast<Element>(i * A.size() + a);
}

}  // namespace

TEST_CASE("semidirect multiplication law") {
  AbelianCarrier A{3, 2};
  auto G = semidirect(A);
  REQUIRE(G.order() == 18);
  for (Element a = 0; a < A.size(); ++a)
    for (Element b = 0; b < A.size(); ++b) {
      CHECK(G.mul(elem(A, 1, b), elem(A, 1, b)) == elem(A, 0, 0));
      CHECK(G.inv(elem(A, 1, b)) == elem(A, 1, b));
      CHECK(G.inv(elem(A, 0, a)) == elem(A, 0, A.negate(a)));
      CHECK(G.conjugate(elem(A, 0, a), elem(A, 1, b)) == elem(A, 0, A.negate(a)));
      auto two_b_minus_a = A.add(A.twice(b), A.negate(a));
      CHECK(G.conjugate(elem(A, 1, a), elem(A, 1, b)) == elem(A, 1, two_b_minus_a));
      for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t j = 0; j < 2; ++j) {
          auto phi_b = i ? A.negate(b) : b;
          CHECK(G.mul(elem(A, i, a), elem(A, j, b)) == elem(A, (i + j) % 2, A.add(a, phi_b)));
        }
    }
}

TEST_CASE("small class partitions") {
  auto s3 = semidirect({3, 1});
  auto p = conjugacy_classes(s3);
  REQUIRE(p.classes.size() == 3);
  CHECK(p.classes[0] == std::vector<Element>{0});
  CHECK(p.classes[1] == std::vector<Element>{1, 2});
  CHECK(p.classes[2] == std::vector<Element>{3, 4, 5});
  CHECK(conjugacy_classes(symmetric(3)).classes.size() == 3);
  for (std::size_t n : {1, 2, 5, 12}) {
    auto c = conjugacy_classes(cyclic(n));
    CHECK(c.classes.size() == n);
    for (const auto& k : c.classes) CHECK(k.size() == 1);
  }
  const std::size_t partitions[] = {1, 1, 2, 3, 5, 7, 11};
  for (std::size_t k = 1; k <= 6; ++k) CHECK(conjugacy_classes(symmetric(k)).classes.size() == partitions[k]);
  CHECK_THROWS_AS(conjugacy_classes(symmetric(6), 100), CapExceededError);
}

TEST_CASE("semidirect proposition over Z3^n") {
  const std::size_t expected[] = {0, 3, 6, 15, 42};
  for (std::uint32_t n = 1; n <= 4; ++n) {
    AbelianCarrier A{3, n};
    auto r = verify_semidirect_proposition(A);
    CHECK(r.pass);
    CHECK(r.class_count == expected[n]);
    CHECK(r.formula == expected[n]);
    auto G = semidirect(A);
    auto p = conjugacy_classes(G);
    CHECK(brute_class_count(G) == expected[n]);
    for (const auto& c : p.classes) {
      if (c.front() < A.size()) {
        CHECK(c.size() <= 2);
      } else {
        CHECK(c.size() == A.size());
      }
    }
  }
}

TEST_CASE("other carriers") {
  auto odd = verify_semidirect_proposition({5, 2});
  CHECK(odd.pass);
  CHECK(odd.class_count == (25 - 1) / 2 + 2);
  auto z2 = verify_semidirect_proposition({2, 3});
  CHECK_FALSE(z2.two_divisible);
  CHECK_FALSE(z2.pass);
  CHECK_FALSE(z2.note.empty());
  CHECK_FALSE(AbelianCarrier{2, 1}.half(1).has_value());
  AbelianCarrier z3{3, 3};
  for (Element a = 0; a < z3.size(); ++a) CHECK(z3.twice(*z3.half(a)) == a);
}

TEST_CASE("partitions are conjugation closed and methods agree") {
  for (const auto& spec : {"z2_semidirect_z3pow:2", "sym:4", "cyclic:3*sym:3", "z2_semidirect_z2pow:2"}) {
    auto g = named_group(spec);
    auto brute = conjugacy_classes(g);
    CHECK(conjugation_closed(g, brute));
    CHECK(conjugacy_classes_parallel(g).classes == brute.classes);
    CHECK(conjugacy_classes_by_generators(g).classes == brute.classes);
    std::size_t covered = 0;
    for (const auto& c : brute.classes) covered += c.size();
    CHECK(covered == g.order());
  }
}

TEST_CASE("product classes match brute force") {
  std::vector<std::string> specs{"cyclic:1", "cyclic:2", "cyclic:4", "sym:3", "sym:4",
                                 "z2_semidirect_z3pow:1", "z2_semidirect_z3pow:2", "z2_semidirect_z2pow:2"};
  for (const auto& a : specs)
    for (const auto& b : specs) {
      auto g = named_group(a), h = named_group(b);
      auto gh = product(g, h);
      if (gh.order() > 10'000) continue;
      auto combined = product_classes(conjugacy_classes(g), conjugacy_classes(h));
      auto direct = conjugacy_classes(gh);
      INFO(a << " * " << b);
      CHECK(combined.classes.size() == direct.classes.size());
      CHECK(combined.classes == direct.classes);
    }
  auto sq = conjugacy_classes(named_group("z2_semidirect_z3pow:1*z2_semidirect_z3pow:1"));
  CHECK(sq.classes.size() == 9);
  CHECK(product_classes(conjugacy_classes(cyclic(2)), conjugacy_classes(cyclic(2))).classes.size() == 4);
}

TEST_CASE("named groups and table files") {
  CHECK(named_group("cyclic:7").order() == 7);
  CHECK(named_group("sym:5").order() == 120);
  CHECK(named_group("z2_semidirect_zmpow:5:2").order() == 50);
  CHECK_THROWS_AS(named_group("dihedral:4"), std::invalid_argument);

  auto path = std::string("zoo_test_group.txt");
  {
    std::ofstream out(path);
    out << "fraisse-group v1\nname klein\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
  }
  auto klein = load_group_file(path);
  CHECK(klein.name() == "klein");
  CHECK(conjugacy_classes(klein).classes.size() == 4);
  {
    std::ofstream out(path);
    out << "fraisse-group v1\nname broken\n0 1\n1 1\n";
  }
  CHECK_THROWS(load_group_file(path));
  std::remove(path.c_str());
}

TEST_CASE("table rows") {
  auto rows = table1_rows(4);
  auto find = [&](const std::string& name) {
    return std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.row == name; });
  };
  auto zn = find("Z_n");
  REQUIRE(zn != rows.end());
  CHECK(zn->class_count == 4);
  CHECK(zn->largest_class == 1);
  auto mixed = find("Z_n x (Z2 x| Z3^omega)");
  REQUIRE(mixed != rows.end());
  CHECK(mixed->class_count == 4 * ((9 - 1) / 2 + 2));
  CHECK(mixed->largest_class == 9);
  auto hnn = find("HNN");
  REQUIRE(hnn != rows.end());
  CHECK_FALSE(hnn->constructible);
  CHECK_FALSE(hnn->class_count.has_value());
  for (const auto& r : rows)
    if (r.row == "S_infinity") CHECK(r.truncated);
}
