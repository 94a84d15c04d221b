#pragma once

#include <optional>
#include <string>

namespace pnetkit {

enum class Outcome { Yes, No, Unknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    default: return "unknown";
  }
}

// Three-valued analysis result. Yes/No carry a machine-checkable witness
// whenever the operation contract defines one; Unknown carries the reason
// (e.g. "bound 64 exhausted").
template <class W>
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<W> witness;
  std::string reason;

  static Verdict yes() { return {Outcome::Yes, std::nullopt, {}}; }
  static Verdict yes(W w, std::string note = {}) {
    return {Outcome::Yes, std::move(w), std::move(note)};
  }
  static Verdict no() { return {Outcome::No, std::nullopt, {}}; }
  static Verdict no(W w, std::string note = {}) {
    return {Outcome::No, std::move(w), std::move(note)};
  }
  static Verdict no_because(std::string why) {
    return {Outcome::No, std::nullopt, std::move(why)};
  }
  static Verdict unknown(std::string why) { return {Outcome::Unknown, std::nullopt, std::move(why)}; }

  bool is_yes() const { return outcome == Outcome::Yes; }
  bool is_no() const { return outcome == Outcome::No; }
  bool is_unknown() const { return outcome == Outcome::Unknown; }
};

struct Unit {};

}  // namespace pnetkit
