#include "vcsmc/vcs/generator.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace vcsmc::vcs {

const char* to_string(Mutant m) {
  switch (m) {
    case Mutant::None: return "none";
    case Mutant::SwappedFallbackPriority: return "swapped-fallback-priority";
  }
  return "?";
}

std::optional<Mutant> parse_mutant(const std::string& name) {
  for (auto m : {Mutant::None, Mutant::SwappedFallbackPriority})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

VcsConfig VcsConfig::desk() { return {}; }

VcsConfig VcsConfig::full() {
  VcsConfig c;
  c.ecus = 7;
  c.buses = 3;
  c.power_entries = 2;
  c.p2p_offsets = {1, -1, 2, -2};
  return c;
}

void VcsConfig::validate() const {
  if (ecus < 2) throw ConfigError("at least 2 ECUs required");
  if (buses < 1) throw ConfigError("at least 1 bus required");
  if (power_supplies != 2) throw ConfigError("exactly 2 power supplies (primary and backup) are modeled");
  if (power_entries < 1 || power_entries > 2) throw ConfigError("power entries per supply must be 1 or 2");
  if (debounce < 1) throw ConfigError("debounce must be at least 1 cycle");
  if (runup < 5) throw ConfigError("run-up must be at least 5 steps");
  if (deadline < debounce - 1) throw ConfigError("deadline shorter than the debounce latency");
  std::set<int> seen;
  for (int o : p2p_offsets) {
    int m = ((o % ecus) + ecus) % ecus;
    if (m == 0) throw ConfigError("p2p offset " + std::to_string(o) + " maps an ECU onto itself");
    if (!seen.insert(m).second) throw ConfigError("p2p offset " + std::to_string(o) + " duplicates another link");
  }
}

std::vector<Link> links(const VcsConfig& cfg) {
  std::vector<Link> out;
  for (int o : cfg.p2p_offsets)
    for (int s = 1; s <= cfg.ecus; ++s) {
      int r = ((s - 1 + o) % cfg.ecus + cfg.ecus) % cfg.ecus + 1;
      out.push_back({s, r, (s - 1) % cfg.buses + 1});
    }
  return out;
}

const std::vector<std::string>& operation_modes() {
  static const std::vector<std::string> modes{"Startup", "Normal", "FallbackA", "FallbackB", "FallbackC", "SafeStop"};
  return modes;
}

namespace {

struct Entry {
  std::string id;
  std::string var;
  std::string kind;
  // effect of the failure on the system
  bool ecu = false;
  bool comm = false;
  int supply = 0;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string link_name(const Link& l) { return std::to_string(l.sender) + "_" + std::to_string(l.receiver); }
int supply_of(int ecu) { return (ecu - 1) % 2 + 1; }

std::vector<Entry> axes(const VcsConfig& cfg) {
  std::vector<Entry> out;
  for (int i = 1; i <= cfg.ecus; ++i) {
    Entry e{"ECU" + std::to_string(i), "F_ECU" + std::to_string(i), "ecu"};
    e.ecu = true;
    out.push_back(e);
  }
  for (int k = 1; k <= cfg.power_supplies; ++k) {
    Entry e{"PWR" + std::to_string(k), "F_PWR" + std::to_string(k), "power"};
    e.supply = k;
    out.push_back(e);
    if (cfg.power_entries == 2) {
      e.id += "_LINE";
      e.var += "_LINE";
      out.push_back(e);
    }
  }
  for (int b = 1; b <= cfg.buses; ++b) {
    Entry e{"BUS" + std::to_string(b), "F_BUS" + std::to_string(b), "bus"};
    e.comm = true;
    out.push_back(e);
  }
  for (const Link& l : links(cfg)) {
    Entry e{"P2P_" + link_name(l), "F_P2P_" + link_name(l), "p2p"};
    e.comm = true;
    out.push_back(e);
  }
  return out;
}

struct Composite {
  std::string id, var, a, b;
};

std::vector<Composite> composites() {
  return {{"PWR_DUAL", "C_PWR_DUAL", "F_PWR1", "F_PWR2"},
          {"CTRL_DUAL", "C_CTRL_DUAL", "F_ECU1", "F_ECU2"},
          {"PWR1_CTRL2", "C_PWR1_CTRL2", "F_PWR1", "F_ECU2"}};
}

// Required mode once every failure in the set has taken effect.
std::string target(const Entry& a, const Entry& b) {
  std::set<int> supplies;
  for (const Entry* e : {&a, &b})
    if (e->supply) supplies.insert(e->supply);
  if (supplies.size() == 2) return "FATAL";
  if (!supplies.empty()) return "FallbackC";
  if (a.ecu || b.ecu) return "FallbackA";
  return "FallbackB";
}

// Cascade arms in priority order: (mode, condition on the current state).
std::vector<std::pair<std::string, std::string>> cascade(const VcsConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> arms{
      {"Startup", "Mode = Startup & !all_active"},
      {"Normal", "!ecu_down & !comm_down & !pwr_down"},
      {"FallbackA", "ecu_down & !pwr_down"},
      {"FallbackB", "comm_down & !pwr_down"},
      {"FallbackC", "pwr_lost_1 != pwr_lost_2"},
      {"SafeStop", "TRUE"},
  };
  if (cfg.mutant == Mutant::SwappedFallbackPriority) std::swap(arms[2], arms[3]);
  return arms;
}

std::string global_module(const VcsConfig& cfg) {
  std::ostringstream os;
  os << "MODULE M_GLOBAL\n"
     << "DEFINE\n"
     << "  DEBOUNCE := " << cfg.debounce << ";\n"
     << "  T_READY := " << cfg.runup - 4 << ";  -- Ready, received, Active, then Normal\n\n";
  return os.str();
}

std::string ecu_module(const VcsConfig& cfg, int i, const std::vector<Link>& ls) {
  std::vector<std::string> rx;
  for (const Link& l : ls)
    if (l.receiver == i) rx.push_back("RX_" + std::to_string(l.sender));
  std::string s = "S_ECU" + std::to_string(i);
  std::ostringstream os;
  os << "MODULE M_ECU" << i << " (Global, " << join(rx, ", ") << (rx.empty() ? "" : ", ") << "FailSelf, PowerLost)\n"
     << "VAR\n"
     << "  " << s << " : {Init, Ready, Active, Passive};\n"
     << "  Timer : 0..Global.T_READY;\n"
     << "ASSIGN\n"
     << "  init (" << s << ") := Init;\n"
     << "  next (" << s << ") :=\n"
     << "    case\n"
     << "      FailSelf | PowerLost : Passive;\n"
     << "      " << s << " = Init & Timer = Global.T_READY : Ready;\n";
  std::vector<std::string> peers;
  for (const auto& r : rx) peers.push_back("(" + r + " = Ready | " + r + " = Active)");
  os << "      " << s << " = Ready" << (peers.empty() ? "" : " & ") << join(peers, " & ") << " : Active;\n"
     << "      TRUE : " << s << ";\n"
     << "    esac;\n"
     << "  init (Timer) := 0;\n"
     << "  next (Timer) :=\n"
     << "    case\n"
     << "      " << s << " != Init : 0;\n"
     << "      Timer = Global.T_READY : Timer;\n"
     << "      TRUE : Timer + 1;\n"
     << "    esac;\n\n";
  (void)cfg;
  return os.str();
}

// One receive buffer per link: holds the last value while the link is down,
// and latches a communication failure after DEBOUNCE consecutive lost cycles.
std::string bus_module(const VcsConfig& cfg, const std::vector<Link>& ls) {
  std::vector<std::string> params{"Global"};
  for (int i = 1; i <= cfg.ecus; ++i) params.push_back("S_ECU" + std::to_string(i));
  for (int b = 1; b <= cfg.buses; ++b) params.push_back("F_BUS" + std::to_string(b));
  for (const Link& l : ls) params.push_back("F_P2P_" + link_name(l));
  std::ostringstream os;
  os << "MODULE M_BUS (" << join(params, ", ") << ")\nVAR\n";
  for (const Link& l : ls) {
    auto n = link_name(l);
    os << "  rx_" << n << " : {Init, Ready, Active, Passive};\n"
       << "  cnt_" << n << " : 0..Global.DEBOUNCE;\n"
       << "  cf_" << n << " : boolean;\n";
  }
  os << "DEFINE\n";
  std::vector<std::string> cfs;
  for (const Link& l : ls) {
    auto n = link_name(l);
    os << "  lost_" << n << " := F_BUS" << l.bus << " | F_P2P_" << n << ";\n";
    cfs.push_back("cf_" + n);
  }
  os << "  comm_failure := " << join(cfs, " | ") << ";\n";
  os << "ASSIGN\n";
  for (const Link& l : ls) {
    auto n = link_name(l);
    os << "  init (rx_" << n << ") := Init;\n"
       << "  next (rx_" << n << ") := case lost_" << n << " : rx_" << n << "; TRUE : S_ECU" << l.sender << "; esac;\n"
       << "  init (cnt_" << n << ") := 0;\n"
       << "  next (cnt_" << n << ") :=\n"
       << "    case\n"
       << "      !lost_" << n << " : 0;\n"
       << "      cnt_" << n << " = Global.DEBOUNCE : cnt_" << n << ";\n"
       << "      TRUE : cnt_" << n << " + 1;\n"
       << "    esac;\n"
       << "  init (cf_" << n << ") := FALSE;\n"
       << "  next (cf_" << n << ") := cf_" << n << " | (lost_" << n << " & cnt_" << n << " = Global.DEBOUNCE - 1);\n";
  }
  os << "\n";
  return os.str();
}

std::string main_module(const VcsConfig& cfg, const std::vector<Link>& ls, const std::vector<Entry>& ax) {
  std::ostringstream os;
  os << "MODULE main\nVAR\n  Global : M_GLOBAL;\n";
  std::vector<std::string> bus_args{"Global"};
  for (int i = 1; i <= cfg.ecus; ++i) bus_args.push_back("ecu" + std::to_string(i) + ".S_ECU" + std::to_string(i));
  for (int b = 1; b <= cfg.buses; ++b) bus_args.push_back("F_BUS" + std::to_string(b));
  for (const Link& l : ls) bus_args.push_back("F_P2P_" + link_name(l));
  os << "  bus : M_BUS(" << join(bus_args, ", ") << ");\n";
  for (int i = 1; i <= cfg.ecus; ++i) {
    std::vector<std::string> args{"Global"};
    for (const Link& l : ls)
      if (l.receiver == i) args.push_back("bus.rx_" + link_name(l));
    args.push_back("F_ECU" + std::to_string(i));
    args.push_back("pwr_lost_" + std::to_string(supply_of(i)));
    os << "  ecu" << i << " : M_ECU" << i << "(" << join(args, ", ") << ");\n";
  }
  for (int k = 1; k <= cfg.power_supplies; ++k) os << "  pwr_lost_" << k << " : boolean;\n";
  os << "  Mode : {" << join(operation_modes(), ", ") << "};\n";
  for (const auto& m : operation_modes()) os << "  Op" << m << " : boolean;\n";
  for (const auto& c : composites()) os << "  " << c.var << " : boolean;\n";

  os << "  " << "-- @injection-begin" << "\n  DEFINE\n";
  for (const Entry& e : ax) os << "    " << e.var << " := FALSE;\n";
  os << "  " << "-- @injection-end" << "\n";

  std::vector<std::string> passive, active;
  for (int i = 1; i <= cfg.ecus; ++i) {
    auto s = "ecu" + std::to_string(i) + ".S_ECU" + std::to_string(i);
    passive.push_back(s + " = Passive");
    active.push_back(s + " = Active");
  }
  os << "DEFINE\n"
     << "  all_active := " << join(active, " & ") << ";\n"
     << "  ecu_down := " << join(passive, " | ") << ";\n"
     << "  comm_down := bus.comm_failure;\n"
     << "  pwr_down := pwr_lost_1 | pwr_lost_2;\n";
  auto arms = cascade(cfg);
  std::vector<std::string> before;
  for (const auto& [mode, cond] : arms) {
    std::string sel = cond == "TRUE" ? "" : "(" + cond + ")";
    std::vector<std::string> parts;
    auto earlier = before;  // sorted, so only arms whose own rank changes are rewritten
    std::sort(earlier.begin(), earlier.end());
    for (const auto& b : earlier) parts.push_back("!(" + b + ")");
    if (!sel.empty()) parts.push_back(sel);
    os << "  sel_" << mode << " := " << (parts.empty() ? "TRUE" : join(parts, " & ")) << ";\n";
    before.push_back(cond);
  }

  os << "ASSIGN\n";
  for (int k = 1; k <= cfg.power_supplies; ++k) {
    std::vector<std::string> causes{"pwr_lost_" + std::to_string(k)};
    for (const Entry& e : ax)
      if (e.supply == k) causes.push_back(e.var);
    os << "  init (pwr_lost_" << k << ") := FALSE;\n"
       << "  next (pwr_lost_" << k << ") := " << join(causes, " | ") << ";\n";
  }
  os << "  init (Mode) := Startup;\n"
     << "  next (Mode) :=\n"
     << "    case\n";
  for (const auto& [mode, cond] : arms) os << "      " << cond << " : " << mode << ";\n";
  os << "    esac;\n";
  for (const auto& m : operation_modes())
    os << "  init (Op" << m << ") := " << (m == "Startup" ? "TRUE" : "FALSE") << ";\n"
       << "  next (Op" << m << ") := sel_" << m << ";\n";
  os << "  -- composite failures are observed one step late\n";
  for (const auto& c : composites())
    os << "  init (" << c.var << ") := FALSE;\n"
       << "  next (" << c.var << ") := " << c.a << " & " << c.b << ";\n";
  return os.str();
}

std::string persisted(const std::string& x, int cycles) {
  std::vector<std::string> parts;
  std::string prefix;
  for (int i = 0; i < cycles; ++i, prefix += "Y ") parts.push_back(prefix + x);
  return join(parts, " & ");
}

std::string spec_catalog(const VcsConfig& cfg) {
  std::ostringstream os;
  auto spec = [&os](const std::string& name, const std::string& app, const std::string& formula,
                    const std::string& description) {
    os << "[" << name << "]\n"
       << "description = " << description << "\n"
       << "applicability = " << app << "\n"
       << "formula = " << formula << "\n\n";
  };
  const int r = cfg.runup;
  std::vector<std::string> ops, pairs;
  for (const auto& m : operation_modes()) ops.push_back("Op" + m);
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) pairs.push_back("!(" + ops[i] + " & " + ops[j] + ")");

  os << "# Specifications for the generated vehicle control system.\n"
     << "# Placeholders: {{TARGET_MODE}} {{FAIL_A}} {{FAIL_B}}\n\n";
  spec("runup", "all", "F[0," + std::to_string(r) + "] Mode = Normal", "normal operation after the run-up");
  spec("startup_phase", "all", "G[0," + std::to_string(r - 1) + "] Mode = Startup", "no early mode switch");
  spec("normal_forever", "none", "G[" + std::to_string(r) + ",70] Mode = Normal", "failure-free runs stay normal");
  spec("mode_unique", "all", "G ((" + join(ops, " | ") + ") & " + join(pairs, " & ") + ")",
       "exactly one operation mode indicator");
  spec("no_restart", "all", "G (Mode != Startup -> X Mode != Startup)", "the run-up happens once");
  spec("safestop_final", "all", "G (Mode = SafeStop -> X Mode = SafeStop)", "safe stop is terminal");
  spec("safestop_cause", "all", "G (Mode = SafeStop -> pwr_lost_1 & pwr_lost_2)", "safe stop only on dual power loss");
  spec("normal_history", "all", "G (Mode = Normal -> H (Mode = Normal | Mode = Startup))",
       "no return to normal after a degradation");
  spec("fallback_exclusive", "single", "G !(O OpFallbackA & O OpFallbackB)", "one failure selects one fallback");
  const std::string d = std::to_string(cfg.deadline);
  spec("single_deadline", "single",
       "G ((" + persisted("{{FAIL_A}}", cfg.debounce) + ") -> F[0," + d + "] Mode = {{TARGET_MODE}})",
       "switch to the target mode after a persistent failure");
  spec("single_stays", "single", "G (Mode = {{TARGET_MODE}} -> X Mode = {{TARGET_MODE}})",
       "the target mode is kept");
  spec("double_deadline", "double",
       "G ((O (" + persisted("{{FAIL_A}}", cfg.debounce) + ") & " + persisted("{{FAIL_B}}", cfg.debounce) +
           ") -> F[0," + d + "] Mode = {{TARGET_MODE}})",
       "switch to the target mode after two persistent failures");
  return os.str();
}

}  // namespace

VcsBundle generate_vcs(const VcsConfig& cfg) {
  cfg.validate();
  const auto ls = links(cfg);
  const auto ax = axes(cfg);
  VcsBundle b;
  b.axes = static_cast<int>(ax.size());

  std::ostringstream model;
  model << "-- Vehicle control system: " << cfg.ecus << " ECUs, " << cfg.buses << " bus(es), "
        << cfg.power_supplies << " power supplies"
        << (cfg.mutant == Mutant::None ? "" : std::string(", mutant ") + to_string(cfg.mutant)) << "\n\n";
  model << global_module(cfg);
  for (int i = 1; i <= cfg.ecus; ++i) model << ecu_module(cfg, i, ls);
  model << bus_module(cfg, ls) << main_module(cfg, ls, ax);
  b.model = model.str();

  std::ostringstream cat;
  cat << "index,id,variable,kind\n";
  int idx = 1;
  for (const Entry& e : ax) cat << idx++ << "," << e.id << "," << e.var << "," << e.kind << "\n";
  for (const auto& c : composites()) cat << idx++ << "," << c.id << "," << c.var << ",composite\n";
  b.failures = cat.str();

  std::ostringstream mx;
  for (const Entry& e : ax) mx << "," << e.id;
  mx << "\n";
  for (const Entry& row : ax) {
    mx << row.id;
    for (const Entry& col : ax) mx << "," << target(row, col);
    mx << "\n";
  }
  b.target_modes = mx.str();
  b.specs = spec_catalog(cfg);
  return b;
}

void write_bundle(const VcsBundle& bundle, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto put = [&dir](const char* name, const std::string& text) {
    fs::path p = fs::path(dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) throw std::runtime_error(p.string() + ": cannot write");
  };
  put("vcs.fsm", bundle.model);
  put("failures.csv", bundle.failures);
  put("target_modes.csv", bundle.target_modes);
  put("specs.ltl", bundle.specs);
}

}  // namespace vcsmc::vcs
