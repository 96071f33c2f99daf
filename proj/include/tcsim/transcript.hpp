#pragma once

#include <string>
#include <vector>

namespace tcsim {

enum class Party { Verifier, Prover, Center };

const char* party_name(Party p);

// One classical message or measurement record in protocol step order.
struct TranscriptEvent {
  Party party = Party::Verifier;
  std::string label;    // e.g. "a1", "b1"
  std::string payload;  // canonical rendering of the transmitted bits
  std::string state_tag;  // optional description of the held quantum state
};

struct Transcript {
  std::vector<TranscriptEvent> events;

  // Canonical one-line rendering; equal transcripts render identically, so
  // the string doubles as a distribution key.
  std::string key() const;
};

}  // namespace tcsim
