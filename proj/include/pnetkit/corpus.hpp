#pragma once

#include <map>
#include <string>
#include <vector>

#include "pnetkit/format.hpp"
#include "pnetkit/net.hpp"
#include "pnetkit/pcmg.hpp"

namespace pnetkit {

// One expected fact about a fixture, re-derived by the regression suite.
// Values are plain strings: "yes"/"no", a number, a transition sequence,
// or a place-set list like "p0 p1 | p2 p3".
struct Claim {
  std::string value;
  std::string note;  // what makes the claim hold
};

struct Fixture {
  std::string key;
  std::string file;       // .pnet, relative to the fixture directory
  std::string pcmg_file;  // optional .pcmg construction spec
  std::string summary;
  std::map<std::string, Claim> expected;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& key);

std::string fixture_dir();  // PNETKIT_FIXTURES env var or the built-in path

System load_fixture(const Fixture& f);
System load_fixture(const std::string& key);
PcmgSpec load_fixture_pcmg(const Fixture& f);

}  // namespace pnetkit
