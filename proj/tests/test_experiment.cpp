#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pvforms/experiment.hpp"

using namespace pvforms;

TEST_CASE("gas spec validation") {
  GasSpec g;
  CHECK_NOTHROW(g.validate());
  g.n_moles = 0;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = GasSpec{};
  g.R = -1;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = GasSpec{};
  g.cv_molar = 0;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = GasSpec{};
  g.a = -5; // any offset is fine
  CHECK_NOTHROW(g.validate());
  CHECK(g.nR() == doctest::Approx(8.3145));
  CHECK(g.cv() == doctest::Approx(12.47175));
}

TEST_CASE("entropy formula") {
  const GasSpec g;
  const double p = 12345.0, V = 0.031;
  CHECK(entropy(g, p, V) ==
        doctest::Approx(g.cv() * std::log(p * V / g.nR()) +
                        g.nR() * std::log(V) + g.a)
            .epsilon(1e-14));
  CHECK_THROWS_AS(entropy(g, -1.0, V), DomainError);
  CHECK_THROWS_AS(entropy(g, p, 0.0), DomainError);

  // The additive offset shifts S but never differences.
  GasSpec shifted = g;
  shifted.a = 100.0;
  CHECK(entropy(shifted, p, V) - entropy(g, p, V) == doctest::Approx(100.0));

  // Doubling n doubles S up to the mixing of the log argument, checked
  // directly against the n-scaled formula.
  GasSpec two = g;
  two.n_moles = 2.0;
  CHECK(entropy(two, p, V) ==
        doctest::Approx(two.cv() * std::log(p * V / two.nR()) +
                        two.nR() * std::log(V)));
}

TEST_CASE("entropy changes along the isochoric-isobaric square") {
  const GasSpec g;
  const double p1 = 10000.0, V1 = 22.4e-3;
  const double SA = entropy(g, p1, V1);
  const double SB = entropy(g, 2 * p1, V1);
  const double SC = entropy(g, 2 * p1, 2 * V1);
  CHECK(std::abs(SB - SA - 8.644758) < 1e-5);
  CHECK(std::abs(SC - SB - 14.407931) < 1e-5);
  // Closed-form cross-check.
  CHECK(SB - SA == doctest::Approx(g.cv() * std::log(2.0)).epsilon(1e-13));
  CHECK(SC - SB ==
        doctest::Approx((g.cv() + g.nR()) * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("path segments") {
  SUBCASE("endpoints are exact") {
    PathSegment s{SegmentKind::Isothermal, 3.0, 2.0, 2.0, 3.0, 2};
    CHECK_NOTHROW(s.validate());
    double p, V;
    s.at(0.0, p, V);
    CHECK(p == 3.0);
    CHECK(V == 2.0);
    s.at(1.0, p, V);
    CHECK(p == 2.0);
    CHECK(V == 3.0);
  }
  SUBCASE("isochoric holds V constant") {
    PathSegment s{SegmentKind::Isochoric, 1.0, 5.0, 4.0, 5.0, 2};
    double p, V;
    for (double u : {0.0, 0.25, 0.5, 0.99, 1.0}) {
      s.at(u, p, V);
      CHECK(V == 5.0);
      CHECK(p == doctest::Approx(1.0 + 3.0 * u));
    }
  }
  SUBCASE("isothermal holds p*V constant") {
    PathSegment s{SegmentKind::Isothermal, 6.0, 1.0, 2.0, 3.0, 2};
    double p, V;
    for (double u : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      s.at(u, p, V);
      CHECK(p * V == doctest::Approx(6.0).epsilon(1e-14));
    }
  }
  SUBCASE("velocity matches finite differences of position") {
    for (SegmentKind k : {SegmentKind::Isochoric, SegmentKind::Isobaric,
                          SegmentKind::Linear, SegmentKind::Isothermal}) {
      PathSegment s;
      s.kind = k;
      s.p0 = 2.0;
      s.V0 = 1.5;
      switch (k) {
      case SegmentKind::Isochoric: s.p1 = 5.0; s.V1 = 1.5; break;
      case SegmentKind::Isobaric: s.p1 = 2.0; s.V1 = 4.0; break;
      case SegmentKind::Linear: s.p1 = 5.0; s.V1 = 4.0; break;
      case SegmentKind::Isothermal: s.p1 = 1.0; s.V1 = 3.0; break;
      }
      const double h = 1e-6;
      for (double u : {0.2, 0.5, 0.8}) {
        double pa, Va, pb, Vb, dp, dV;
        s.at(u - h, pa, Va);
        s.at(u + h, pb, Vb);
        s.velocity(u, dp, dV);
        CHECK(dp == doctest::Approx((pb - pa) / (2 * h)).epsilon(1e-6));
        CHECK(dV == doctest::Approx((Vb - Va) / (2 * h)).epsilon(1e-6));
      }
    }
  }
  SUBCASE("kind consistency is enforced") {
    CHECK_THROWS_AS(
        (PathSegment{SegmentKind::Isochoric, 1.0, 1.0, 2.0, 2.0, 2}
             .validate()),
        InconsistentKindError);
    CHECK_THROWS_AS(
        (PathSegment{SegmentKind::Isobaric, 1.0, 1.0, 2.0, 1.0, 2}
             .validate()),
        InconsistentKindError);
    CHECK_THROWS_AS(
        (PathSegment{SegmentKind::Isothermal, 2.0, 1.0, 2.0, 2.0, 2}
             .validate()),
        InconsistentKindError);
    CHECK_THROWS_AS(
        (PathSegment{SegmentKind::Linear, -1.0, 1.0, 2.0, 2.0, 2}
             .validate()),
        DomainError);
    CHECK_THROWS_AS(
        (PathSegment{SegmentKind::Linear, 1.0, 1.0, 2.0, 2.0, 1}
             .validate()),
        ValidationError);
  }
}

TEST_CASE("segment kind names round trip") {
  for (SegmentKind k : {SegmentKind::Isochoric, SegmentKind::Isobaric,
                        SegmentKind::Linear, SegmentKind::Isothermal})
    CHECK(segment_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(segment_kind_from_string("adiabatic"), ValidationError);
}

TEST_CASE("make_path") {
  const Trajectory t = make_path({{1.0, 1.0}, {2.0, 1.0}, {2.0, 3.0}},
                                 {SegmentKind::Isochoric,
                                  SegmentKind::Isobaric},
                                 5);
  REQUIRE(t.segments.size() == 2);
  CHECK(t.segments[0].p1 == t.segments[1].p0);
  CHECK(t.segments[0].V1 == t.segments[1].V0);
  CHECK(t.segments[1].samples == 5);

  CHECK_THROWS_AS(make_path({{1.0, 1.0}}, {}, 2), ValidationError);
  CHECK_THROWS_AS(make_path({{1.0, 1.0}, {2.0, 1.0}},
                            {SegmentKind::Isochoric, SegmentKind::Isobaric},
                            2),
                  ValidationError);
  CHECK_THROWS_AS(make_path({{1.0, 1.0}, {2.0, 2.0}},
                            {SegmentKind::Isochoric}, 2),
                  InconsistentKindError);
}

TEST_CASE("run_experiment sampling") {
  const GasSpec g;
  const Trajectory t = make_path(
      {{10000.0, 22.4e-3}, {20000.0, 22.4e-3}, {20000.0, 44.8e-3}},
      {SegmentKind::Isochoric, SegmentKind::Isobaric}, 4);
  const auto recs = run_experiment(g, t);
  REQUIRE(recs.size() == 8);
  CHECK(recs.front().t == 0.0);
  CHECK(recs[3].t == 1.0);
  CHECK(recs[4].t == 1.0); // segment join shows up as a repeated t
  CHECK(recs.back().t == 2.0);
  for (const ExperimentRecord &r : recs)
    CHECK(r.S == entropy(g, r.p, r.V));
  CHECK(recs.front().p == 10000.0);
  CHECK(recs.back().V == 44.8e-3);
}

TEST_CASE("records CSV round trip is lossless") {
  const GasSpec g;
  const auto recs = run_experiment(
      g, make_path({{10000.0, 22.4e-3}, {20000.0, 22.4e-3}},
                   {SegmentKind::Isochoric}, 7));
  std::ostringstream os;
  write_records(os, recs);
  const std::string text = os.str();
  CHECK(text.substr(0, 8) == "t,p,V,S\n");

  std::istringstream is(text);
  const auto back = read_records(is);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i)
    CHECK(back[i] == recs[i]); // bit-for-bit
}

TEST_CASE("record reading validates its input") {
  auto read = [](const std::string &text) {
    std::istringstream is(text);
    return read_records(is);
  };

  SUBCASE("header must match") {
    CHECK_THROWS_AS(read("time,p,V,S\n0,1,1,1\n"), ParseError);
    CHECK_THROWS_AS(read(""), ParseError);
  }
  SUBCASE("carriage returns are tolerated") {
    const auto recs = read("t,p,V,S\r\n0,1,2,3\r\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].V == 2.0);
  }
  SUBCASE("field count is fixed") {
    CHECK_THROWS_AS(read("t,p,V,S\n0,1,1\n"), ParseError);
    CHECK_THROWS_AS(read("t,p,V,S\n0,1,1,1,9\n"), ParseError);
  }
  SUBCASE("numbers must parse") {
    try {
      read("t,p,V,S\n0,1,1,1\nx,2,2,2\n");
      FAIL("expected ParseError");
    } catch (const ParseError &e) {
      CHECK(e.line == 3);
    }
  }
  SUBCASE("t must be nondecreasing") {
    CHECK_THROWS_AS(read("t,p,V,S\n1,1,1,1\n0,2,2,2\n"), ValidationError);
  }
  SUBCASE("p and V must be positive") {
    CHECK_THROWS_AS(read("t,p,V,S\n0,-1,1,1\n"), ValidationError);
    CHECK_THROWS_AS(read("t,p,V,S\n0,1,0,1\n"), ValidationError);
  }
  SUBCASE("S may be any real") {
    CHECK_NOTHROW(read("t,p,V,S\n0,1,1,-20\n"));
  }
}

TEST_CASE("grouping splits at repeated t") {
  const GasSpec g;
  const Trajectory t = testutil::rectangle_loop(1.0, 1.0, 2.0, 2.0, 3);
  const auto groups = group_records(run_experiment(g, t));
  REQUIRE(groups.size() == 4);
  for (const auto &grp : groups)
    CHECK(grp.size() == 3);
  // Neighbouring groups share their boundary state.
  for (std::size_t i = 1; i < groups.size(); ++i) {
    CHECK(groups[i].front().p == groups[i - 1].back().p);
    CHECK(groups[i].front().V == groups[i - 1].back().V);
  }

  // Strictly increasing t keeps everything in one group.
  std::istringstream is("t,p,V,S\n0,1,1,1\n1,2,2,2\n2,3,3,3\n");
  CHECK(group_records(read_records(is)).size() == 1);
  CHECK(group_records({}).empty());
}
