#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcsmc::vcs {

enum class Mutant { None, SwappedFallbackPriority };

const char* to_string(Mutant m);
std::optional<Mutant> parse_mutant(const std::string& name);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct VcsConfig {
  int ecus = 4;
  int buses = 1;
  int power_supplies = 2;
  int power_entries = 1;           // catalog entries per supply (supply, then its line)
  std::vector<int> p2p_offsets{1};  // link s -> s + offset (mod ecus) for each offset
  int debounce = 3;
  int runup = 15;
  int deadline = 5;
  Mutant mutant = Mutant::None;

  static VcsConfig desk();
  static VcsConfig full();  // 7 ECUs, 3 buses, 42 injection axes
  void validate() const;
};

struct Link {
  int sender = 0;
  int receiver = 0;
  int bus = 0;
};

/// Directed point-to-point links, in catalog order.
std::vector<Link> links(const VcsConfig& cfg);

struct VcsBundle {
  std::string model;             // vcs.fsm: template with the injection region
  std::string failures;          // failures.csv
  std::string target_modes;      // target_modes.csv
  std::string specs;             // specs.ltl
  int axes = 0;
};

/// Operation modes in cascade order (the mutant swaps FallbackA and FallbackB).
const std::vector<std::string>& operation_modes();

VcsBundle generate_vcs(const VcsConfig& cfg);

/// Writes vcs.fsm, failures.csv, target_modes.csv and specs.ltl into `dir`.
void write_bundle(const VcsBundle& bundle, const std::string& dir);

}  // namespace vcsmc::vcs
