#pragma once

#include <functional>
#include <string>

#include "pnetkit/net.hpp"
#include "pnetkit/pcmg.hpp"

namespace pnetkit {

// Line-oriented textual net format:
//   net <name>
//   pl <id> <tokens>
//   tr <id> : <arc>* -> <arc>*
// with arc = <placeId> or <placeId>*<weight> and '#' comments.
// Parsing and serialization round-trip bit-exactly on canonical text.

struct parse_error : pnet_error {
  parse_error(std::string kind, int line, int col, const std::string& detail)
      : pnet_error(kind + " at " + std::to_string(line) + ":" + std::to_string(col) + ": " +
                   detail),
        kind(std::move(kind)), line(line), col(col) {}
  std::string kind;  // Syntax, DuplicateId, UnknownId, ZeroWeight
  int line, col;
};

System parse_net(const std::string& text);
std::string serialize_net(const System& sys);

System load_net_file(const std::string& path);
void save_net_file(const System& sys, const std::string& path);

// Sparse marking syntax "p1=0,p2=1"; unlisted places default to 0.
Marking parse_marking(const Net& net, const std::string& text);

// PCMG construction spec:
//   pcmg <name>
//   v <vertexId>
//   e <edgeId> <vertexA> <vertexB>
//   component <edgeId> <netfile> <placeA> <placeB>
// Component net files are resolved by `loader` (relative to the spec file
// for the file-based entry point).
PcmgSpec parse_pcmg(const std::string& text,
                    const std::function<System(const std::string&)>& loader);
PcmgSpec load_pcmg_file(const std::string& path);

}  // namespace pnetkit
