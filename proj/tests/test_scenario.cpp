#include <stdexcept>

#include "doctest.h"
#include "ladver/scenario.hpp"
#include "support/testutil.hpp"

using namespace ladver;
using testsup::dev;
using testsup::parse_ok;

namespace {

Program fig1() { return parse_ok("LD X1\nINC D0\nBCD D0 D1\n"); }

InitialValuation init_fig1(bool x1, int d0) {
  InitialValuation v;
  v.state.set_bit(dev("X1"), x1);
  v.state.set_word(dev("D0"), Word16::checked(d0));
  v.state.set_word(dev("D1"), Word16::checked(0));
  return v;
}

smt::Model model_of(std::initializer_list<std::pair<const char*, sym::Value>> kv) {
  smt::Model m;
  for (const auto& [k, v] : kv) m.values[k] = v;
  return m;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("parse_ssa_name splits device and version") {
  auto v = parse_ssa_name("D0_1");
  REQUIRE(v.has_value());
  CHECK(v->device == dev("D0"));
  CHECK(v->version == 1);

  auto x = parse_ssa_name("X12_0");
  REQUIRE(x.has_value());
  CHECK(x->device == dev("X12"));
  CHECK(x->version == 0);

  CHECK_FALSE(parse_ssa_name("D0").has_value());
  CHECK_FALSE(parse_ssa_name("Q1_0").has_value());
  CHECK_FALSE(parse_ssa_name("D_1").has_value());
  CHECK_FALSE(parse_ssa_name("D0_x").has_value());
  CHECK_FALSE(parse_ssa_name("").has_value());
  CHECK_FALSE(parse_ssa_name("_0").has_value());
}

TEST_CASE("model_to_initial reads version-0 values and pads the rest") {
  Program p = fig1();
  auto init = model_to_initial(
      model_of({{"X1_0", sym::Value::of_bool(true)},
                {"D0_0", sym::Value::of_int(9999)}}),
      p);
  CHECK(init.state.bit(dev("X1")));
  CHECK(init.state.word(dev("D0")) == Word16::checked(9999));
  CHECK(init.state.word(dev("D1")) == Word16::checked(0));
  CHECK(init.defaulted == std::set<Device>{dev("D1")});
}

TEST_CASE("model_to_initial ignores non-initial and foreign variables") {
  Program p = fig1();
  auto init = model_to_initial(
      model_of({{"X1_0", sym::Value::of_bool(true)},
                {"D0_0", sym::Value::of_int(5)},
                {"D0_1", sym::Value::of_int(77)},   // later SSA version
                {"D9_0", sym::Value::of_int(42)},   // device not in program
                {"skolem!7", sym::Value::of_int(1)}}),
      p);
  CHECK(init.state.word(dev("D0")) == Word16::checked(5));
  CHECK(init.state.words.count(dev("D9")) == 0);
  CHECK(init.state.words.size() == 2);  // exactly D0 and D1
}

TEST_CASE("model_to_initial rejects sort and range mismatches") {
  Program p = fig1();
  CHECK_THROWS_AS(
      model_to_initial(model_of({{"D0_0", sym::Value::of_bool(true)}}), p),
      ModelSortMismatch);
  CHECK_THROWS_AS(
      model_to_initial(model_of({{"X1_0", sym::Value::of_int(1)}}), p),
      ModelSortMismatch);
  CHECK_THROWS_AS(
      model_to_initial(model_of({{"D0_0", sym::Value::of_int(40000)}}), p),
      ModelSortMismatch);
  CHECK_THROWS_AS(
      model_to_initial(model_of({{"D0_0", sym::Value::of_int(-32769)}}), p),
      ModelSortMismatch);
}

TEST_CASE("simulate_scan reproduces the paper's overflow scenario") {
  Program p = fig1();
  Trace t = simulate_scan(p, init_fig1(true, 9999));

  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].location == StepLoc{0, 0, 1});
  CHECK(t.steps[0].acc_active);
  CHECK(t.steps[0].writes.empty());

  CHECK(t.steps[1].acc_active);
  REQUIRE(t.steps[1].writes.size() == 1);
  CHECK(t.steps[1].writes[0] ==
        Write{dev("D0"), BitOrWord{Word16::checked(10000)}});

  CHECK(t.steps[2].acc_active);
  CHECK(t.steps[2].writes.empty());

  REQUIRE(t.fault.has_value());
  CHECK(t.fault->location == StepLoc{0, 2, 3});
  CHECK(t.fault->reason == "BCD: out of [0...9999] range call");
  REQUIRE(t.fault->offending.size() == 1);
  CHECK(t.fault->offending[0] ==
        std::pair<std::string, Word16>{"D0", Word16::checked(10000)});
}

TEST_CASE("simulate_scan with the wire off executes nothing harmful") {
  Trace t = simulate_scan(fig1(), init_fig1(false, 9999));
  CHECK_FALSE(t.fault.has_value());
  REQUIRE(t.steps.size() == 3);
  CHECK_FALSE(t.steps[0].acc_active);
  CHECK(t.steps[1].writes.empty());
  CHECK_FALSE(t.steps[2].acc_active);
}

TEST_CASE("simulate_scan stops at the fault, dropping later steps") {
  Program p = parse_ok("LD X1\nBCD D0 D1\nLD X1\nOUT Y0\n");
  InitialValuation init;
  init.state.set_bit(dev("X1"), true);
  init.state.set_word(dev("D0"), Word16::checked(-1));
  init.state.set_word(dev("D1"), Word16::checked(0));
  init.state.set_bit(dev("Y0"), false);

  Trace t = simulate_scan(p, init);
  REQUIRE(t.fault.has_value());
  CHECK(t.fault->location == StepLoc{0, 1, 2});
  CHECK(t.steps.size() == 2);  // the second rung never runs
}

TEST_CASE("simulate_scan: block combines follow IL stack semantics") {
  // Y0 = (X0 || X1) after ORB folds the two loaded blocks.
  Program p = parse_ok("LD X0\nLD X1\nORB\nOUT Y0\n");
  for (bool x0 : {false, true}) {
    for (bool x1 : {false, true}) {
      InitialValuation init;
      init.state.set_bit(dev("X0"), x0);
      init.state.set_bit(dev("X1"), x1);
      init.state.set_bit(dev("Y0"), false);
      Trace t = simulate_scan(p, init);
      REQUIRE(t.steps.size() == 4);
      CHECK(t.steps[3].writes.at(0) == Write{dev("Y0"), BitOrWord{x0 || x1}});
    }
  }

  // Series-of-parallel: Y0 = (X0 || X1) && (X2 || X3) via ANB.
  Program q = parse_ok("LD X0\nOR X1\nLD X2\nOR X3\nANB\nOUT Y0\n");
  for (int bits = 0; bits < 16; ++bits) {
    InitialValuation init;
    bool x[4];
    for (int i = 0; i < 4; ++i) {
      x[i] = (bits >> i) & 1;
      init.state.set_bit(Device{DeviceKind::X, static_cast<std::uint16_t>(i)}, x[i]);
    }
    init.state.set_bit(dev("Y0"), false);
    Trace t = simulate_scan(q, init);
    bool expect = (x[0] || x[1]) && (x[2] || x[3]);
    CHECK(t.steps.back().writes.at(0) == Write{dev("Y0"), BitOrWord{expect}});
  }
}

TEST_CASE("build_scenario confirms a genuine counterexample") {
  Program p = fig1();
  ScanResult scan = run_scan_symbolic(p);
  REQUIRE(scan.vcs.size() == 2);
  const Vc& bcd = scan.vcs[1];

  Scenario s = build_scenario(bcd,
                              model_of({{"X1_0", sym::Value::of_bool(true)},
                                        {"D0_0", sym::Value::of_int(9999)}}),
                              p);
  CHECK(s.status == ScenarioStatus::Confirmed);
  CHECK(s.trace.fault.has_value());
  CHECK(s.vc.location == bcd.location);
  CHECK(s.trace.init.defaulted == std::set<Device>{dev("D1")});
}

TEST_CASE("build_scenario flags models that do not reproduce the fault") {
  Program p = fig1();
  ScanResult scan = run_scan_symbolic(p);
  const Vc& bcd = scan.vcs[1];

  // Wire off: the scan runs clean, so the 'counterexample' is vacuous.
  Scenario off = build_scenario(bcd,
                                model_of({{"X1_0", sym::Value::of_bool(false)},
                                          {"D0_0", sym::Value::of_int(9999)}}),
                                p);
  CHECK(off.status == ScenarioStatus::Spurious);

  // Faults, but at INC rather than at the claimed BCD step.
  Scenario elsewhere = build_scenario(
      bcd,
      model_of({{"X1_0", sym::Value::of_bool(true)},
                {"D0_0", sym::Value::of_int(32767)}}),
      p);
  CHECK(elsewhere.status == ScenarioStatus::Spurious);
  REQUIRE(elsewhere.trace.fault.has_value());
  CHECK(elsewhere.trace.fault->reason == "INC: overflow");

  // Right location, wrong reason cannot happen for BCD (one precondition),
  // so cross-claim the INC VC with a BCD-faulting model instead.
  Scenario wrong_reason = build_scenario(
      scan.vcs[0],
      model_of({{"X1_0", sym::Value::of_bool(true)},
                {"D0_0", sym::Value::of_int(9999)}}),
      p);
  CHECK(wrong_reason.status == ScenarioStatus::Spurious);
}

TEST_CASE("parse_init_string covers the documented grammar") {
  Program p = fig1();
  auto init = parse_init_string("X1=1,D0=9999", p);
  CHECK(init.state.bit(dev("X1")));
  CHECK(init.state.word(dev("D0")) == Word16::checked(9999));
  CHECK(init.defaulted == std::set<Device>{dev("D1")});

  // Whitespace around entries, names, and values is tolerated.
  auto spaced = parse_init_string(" X1 = 1 , D0 = -5 ", p);
  CHECK(spaced.state.bit(dev("X1")));
  CHECK(spaced.state.word(dev("D0")) == Word16::checked(-5));

  // Devices outside the program are allowed (useful for what-if runs).
  auto extra = parse_init_string("M5=1", p);
  CHECK(extra.state.bit(dev("M5")));
  CHECK(extra.defaulted.count(dev("X1")) == 1);

  // Empty string: everything defaulted.
  auto empty = parse_init_string("", p);
  CHECK(empty.state.word(dev("D0")) == Word16::checked(0));
  CHECK(empty.defaulted.size() == 3);
}

TEST_CASE("parse_init_string rejects bad entries with precise messages") {
  Program p = fig1();
  auto msg = [&](const char* text) {
    try {
      parse_init_string(text, p);
      return std::string("(no error)");
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
  };
  CHECK(msg("X1=2") == "bad init entry 'X1=2': bit devices take 0 or 1");
  CHECK(msg("D0=40000") ==
        "bad init entry 'D0=40000': value outside -32768..32767");
  CHECK(msg("X1") == "bad init entry 'X1': expected device=value");
  CHECK(msg("D0=abc") == "bad init entry 'D0=abc': value must be decimal");
  CHECK(msg("Q1=0") == "bad init entry 'Q1=0': unknown device 'Q1'");
}

}  // TEST_SUITE
