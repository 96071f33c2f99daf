#include "tcsim/toy_rsp.hpp"

#include <cmath>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

std::vector<int> measured_qubits(int n) {
  // h register, m register, check qubit; the payload stays unmeasured.
  std::vector<int> qubits;
  qubits.push_back(0);
  for (int j = 1; j <= n; ++j) {
    qubits.push_back(j);
  }
  qubits.push_back(2 * n + 1);
  return qubits;
}

struct ParsedOutcome {
  int h = 0;
  BitString m;
  int check = 0;
};

ParsedOutcome parse_outcome(const BitString& b1, int n) {
  ParsedOutcome out;
  out.h = b1.bit(0);
  std::uint64_t m = 0;
  for (int j = 0; j < n; ++j) {
    m = (m << 1) | static_cast<std::uint64_t>(b1.bit(1 + j));
  }
  out.m = BitString(m, n);
  out.check = b1.bit(n + 1);
  return out;
}

std::string render_b1(const ParsedOutcome& o) {
  return "h=" + std::to_string(o.h) + " m=" + o.m.str() +
         " c=" + std::to_string(o.check);
}

Transcript make_transcript(int a1, const ParsedOutcome& o,
                           const std::string& prover_tag) {
  Transcript t;
  t.events.push_back({Party::Verifier, "a1", std::to_string(a1), ""});
  t.events.push_back({Party::Prover, "b1", render_b1(o), prover_tag});
  t.events.push_back(
      {Party::Verifier, "output", "h=" + std::to_string(o.h) + " m=" + o.m.str(), ""});
  return t;
}

}  // namespace

const char* party_name(Party p) {
  switch (p) {
    case Party::Verifier:
      return "verifier";
    case Party::Prover:
      return "prover";
    case Party::Center:
      return "center";
  }
  return "?";
}

std::string Transcript::key() const {
  std::string out;
  for (const auto& e : events) {
    out += party_name(e.party);
    out += ':';
    out += e.label;
    out += '=';
    out += e.payload;
    out += ';';
  }
  return out;
}

PureState toy_rsp_prepared_state(const ToyRspProtocol& protocol, int a1) {
  const int n = protocol.n_qubits;
  if (n < 1 || n > 4) {
    throw DimensionError("toy_rsp: payload size out of range (1..4)");
  }
  const int total = 2 * n + 2;
  const std::int64_t dn = std::int64_t{1} << n;
  Vector amps = Vector::Zero(std::int64_t{1} << total);
  const double w = std::pow(2.0, -0.5 * (n + 1));
  for (int h = 0; h < 2; ++h) {
    const std::int64_t c = static_cast<std::int64_t>(a1 ^ h);
    for (std::int64_t m = 0; m < dn; ++m) {
      const Vector payload =
          bb84_state(h, BitString(static_cast<std::uint64_t>(m), n)).amplitudes();
      for (std::int64_t pay = 0; pay < dn; ++pay) {
        const std::int64_t idx =
            (static_cast<std::int64_t>(h) << (2 * n + 1)) | (m << (n + 1)) |
            (pay << 1) | c;
        amps(idx) = w * payload(pay);
      }
    }
  }
  return PureState(total, std::move(amps));
}

ToyRspRun run_toy_rsp_quantum(const ToyRspProtocol& protocol, Rng& rng) {
  const int n = protocol.n_qubits;
  const int a1 = rng.next_bit();
  const PureState psi = toy_rsp_prepared_state(protocol, a1);
  auto [b1, post] = measure_computational(psi, measured_qubits(n), rng);
  const ParsedOutcome o = parse_outcome(b1, n);

  // Read the payload register out of the collapsed state.
  const std::int64_t dn = std::int64_t{1} << n;
  const std::int64_t base = (static_cast<std::int64_t>(o.h) << (2 * n + 1)) |
                            (static_cast<std::int64_t>(o.m.index()) << (n + 1)) |
                            static_cast<std::int64_t>(o.check);
  Vector payload(dn);
  for (std::int64_t pay = 0; pay < dn; ++pay) {
    payload(pay) = post.amplitudes()(base | (pay << 1));
  }

  ToyRspRun run{make_transcript(a1, o, ""), CenterMessage{o.h, o.m},
                PureState(n, std::move(payload))};
  return run;
}

ClassicalSimulation classical_simulate_ccrsp(const ToyRspProtocol& protocol,
                                             Rng& rng) {
  const int n = protocol.n_qubits;
  const int a1 = rng.next_bit();
  // The simulator computes the description of psi(a1) and samples b1 from
  // Tr[(|b1><b1| (x) I) psi]; no quantum state is ever prepared.
  const PureState psi = toy_rsp_prepared_state(protocol, a1);
  const std::int64_t dn = std::int64_t{1} << n;
  const std::size_t cells = std::size_t{1} << (n + 2);
  std::vector<double> probs(cells, 0.0);
  for (std::int64_t idx = 0; idx < psi.dim(); ++idx) {
    const std::int64_t h = (idx >> (2 * n + 1)) & 1;
    const std::int64_t m = (idx >> (n + 1)) & (dn - 1);
    const std::int64_t c = idx & 1;
    const std::size_t cell =
        static_cast<std::size_t>((h << (n + 1)) | (m << 1) | c);
    probs[cell] += std::norm(psi.amplitudes()(idx));
  }
  const std::size_t drawn = rng.sample_discrete(probs);
  ParsedOutcome o;
  o.h = static_cast<int>((drawn >> (n + 1)) & 1);
  o.m = BitString((drawn >> 1) & static_cast<std::size_t>(dn - 1), n);
  o.check = static_cast<int>(drawn & 1);

  // Post-measurement description of the payload register: H^h|m>.
  PureState description = bb84_state(o.h, o.m);
  ClassicalSimulation sim{make_transcript(a1, o, "classical-description"),
                          CenterMessage{o.h, o.m}, std::move(description)};
  return sim;
}

std::map<std::string, double> toy_rsp_transcript_distribution_quantum(
    const ToyRspProtocol& protocol) {
  const int n = protocol.n_qubits;
  std::map<std::string, double> dist;
  const std::vector<int> qubits = measured_qubits(n);
  for (int a1 = 0; a1 < 2; ++a1) {
    const PureState psi = toy_rsp_prepared_state(protocol, a1);
    // Projection probabilities straight from the state vector.
    const int k = static_cast<int>(qubits.size());
    std::vector<double> probs(std::size_t{1} << k, 0.0);
    for (std::int64_t idx = 0; idx < psi.dim(); ++idx) {
      std::int64_t cell = 0;
      for (int j = 0; j < k; ++j) {
        cell |= ((idx >> (psi.n_qubits() - 1 - qubits[static_cast<std::size_t>(j)])) & 1)
                << (k - 1 - j);
      }
      probs[static_cast<std::size_t>(cell)] += std::norm(psi.amplitudes()(idx));
    }
    for (std::size_t cell = 0; cell < probs.size(); ++cell) {
      if (probs[cell] <= 0.0) {
        continue;
      }
      const ParsedOutcome o = parse_outcome(BitString(cell, k), n);
      dist[make_transcript(a1, o, "").key()] += 0.5 * probs[cell];
    }
  }
  return dist;
}

std::vector<std::pair<CenterMessage, double>> toy_rsp_output_distribution(
    const ToyRspProtocol& protocol) {
  const int n = protocol.n_qubits;
  const std::int64_t dn = std::int64_t{1} << n;
  std::vector<std::pair<CenterMessage, double>> out;
  // Marginalize the prepared state over payload and check registers; the
  // nonce does not influence (h, m).
  const PureState psi = toy_rsp_prepared_state(protocol, 0);
  for (int h = 0; h < 2; ++h) {
    for (std::int64_t m = 0; m < dn; ++m) {
      double p = 0.0;
      for (std::int64_t pay = 0; pay < dn; ++pay) {
        for (std::int64_t c = 0; c < 2; ++c) {
          const std::int64_t idx = (static_cast<std::int64_t>(h) << (2 * n + 1)) |
                                   (m << (n + 1)) | (pay << 1) | c;
          p += std::norm(psi.amplitudes()(idx));
        }
      }
      out.push_back({CenterMessage{h, BitString(static_cast<std::uint64_t>(m), n)}, p});
    }
  }
  return out;
}

std::map<std::string, double> toy_rsp_transcript_distribution_classical(
    const ToyRspProtocol& protocol) {
  const int n = protocol.n_qubits;
  std::map<std::string, double> dist;
  const std::int64_t dn = std::int64_t{1} << n;
  for (int a1 = 0; a1 < 2; ++a1) {
    const PureState psi = toy_rsp_prepared_state(protocol, a1);
    std::vector<double> probs(std::size_t{1} << (n + 2), 0.0);
    for (std::int64_t idx = 0; idx < psi.dim(); ++idx) {
      const std::int64_t h = (idx >> (2 * n + 1)) & 1;
      const std::int64_t m = (idx >> (n + 1)) & (dn - 1);
      const std::int64_t c = idx & 1;
      probs[static_cast<std::size_t>((h << (n + 1)) | (m << 1) | c)] +=
          std::norm(psi.amplitudes()(idx));
    }
    for (std::size_t cell = 0; cell < probs.size(); ++cell) {
      if (probs[cell] <= 0.0) {
        continue;
      }
      ParsedOutcome o;
      o.h = static_cast<int>((cell >> (n + 1)) & 1);
      o.m = BitString((cell >> 1) & static_cast<std::size_t>(dn - 1), n);
      o.check = static_cast<int>(cell & 1);
      dist[make_transcript(a1, o, "classical-description").key()] +=
          0.5 * probs[cell];
    }
  }
  return dist;
}

}  // namespace tcsim
