#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frebels/abstraction.hpp"
#include "frebels/sim.hpp"

namespace frebels {

/// Two runs that look the same to `v`: in r1 the 2f+1 processes of S
/// witness START and B (f of them) is silently byzantine; in r2 nobody
/// witnesses and U (at most f processes cutting S \ B off from v) replays
/// its r1 messages.
struct FrimpScenario {
  DiGraph network;
  ProcessSet s;
  ProcessSet b;
  ProcessSet u;
  ProcessId v = 0;
  SimConfig r1;
  SimConfig r2;
};

/// Without `network`, uses a repeating graph in which S = {0..2f} reaches
/// v = 2f+1 only through B and U: each b -> v, each u -> v, and 2f -> each
/// u. Needs n >= 2f+2. A given network must not admit S as a 2f+1-strong
/// root; roles are then found by search. invalid_argument when no
/// construction exists.
FrimpScenario scenario_frimp(int n, int f, std::optional<DiGraph> network = std::nullopt,
                             Protocol protocol = Protocol::FR);

struct FrimpOutcome {
  Trace t1;
  Trace t2;
  bool views_identical = false;
  Verdict v1;
  Verdict v2;
  /// C fails in r1 or U fails in r2.
  bool violation_forced = false;

  std::string report() const;
};

FrimpOutcome verify_frimp(const FrimpScenario& scenario);

/// Finite abstractions cannot give Relay. Roles: p = 0, B = {1..f},
/// D = {f+1..2f}, R = the rest. Before t1 the network repeats k phases of
/// all links except those out of B; then B reaches D, then D and p talk
/// among themselves, then silence. r2 additionally lets D, B and p reach R.
///   r:  p witnesses, all correct.
///   r1: p is byzantine and simulates the witness.
///   r′: p and D witness (D at t1); B simulates a witness from t1 towards D.
///   r2: p, D and B witness, all correct.
struct InfinityScenario {
  int k = 0;
  ProcessId p = 0;
  ProcessSet b;
  ProcessSet d;
  ProcessSet rest;
  Time t1 = 0;
  /// ST . G_1 ... G_k as realized before t1.
  std::vector<AbstractionItem> abstraction;
  SimConfig r;
  SimConfig r1;
  SimConfig r_prime;
  SimConfig r2;
};

InfinityScenario scenario_infinity(int n, int f, int k, Protocol protocol = Protocol::FRR);

struct InfinityOutcome {
  bool r_vs_r1 = false;        // identical views outside p
  bool r_prime_vs_r2 = false;  // identical views on D and p
  bool r_prime_vs_r = false;   // identical views on the rest
  bool abstraction_holds = false;
  Verdict verdict_r_prime;
  bool relay_failed = false;

  bool all_hold() const;
  std::string report() const;
};

InfinityOutcome verify_infinity(const InfinityScenario& scenario);

}  // namespace frebels
