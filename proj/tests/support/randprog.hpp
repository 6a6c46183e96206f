#pragma once

#include <random>
#include <string>
#include <vector>

#include "ladver/ast.hpp"

// Seeded generators used by the oracle-equivalence corpus, the frame-property
// sweeps, and the parser fuzzer. Everything here is deterministic in the seed.
namespace testsup {

struct RandProgOptions {
  int rungs = 3;                // exact rung count
  int max_logic_steps = 4;      // contacts/combines per rung, >= 1
  int max_actions = 2;          // coils/calls per rung, >= 1
  std::vector<ladver::Device> bit_devices;   // contacts + coil destinations
  std::vector<ladver::Device> word_devices;  // call operands
  bool allow_calls = true;
  bool allow_compares = true;
};

// A structurally valid program: every rung is one load, a run of combines
// (with occasional two-block ANB/ORB), then one or more actions. Word
// constants are drawn from a boundary-heavy pool so contract faults are
// reachable but not guaranteed.
ladver::Program random_program(std::mt19937& rng, const RandProgOptions& opt);

// Uniform random bytes (NUL allowed), for crash-hunting the parser.
std::string random_bytes(std::mt19937& rng, int len);

// Random whitespace-separated soup of plausible tokens: mnemonics, device
// names, K-constants, commas, comments, junk words. Exercises deeper parser
// paths than raw bytes do.
std::string random_token_soup(std::mt19937& rng, int tokens);

}  // namespace testsup
