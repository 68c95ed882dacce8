#pragma once

// The global-pulse instruction set and its executor.
//
// Every instruction addresses a whole sublattice at once — that is the
// whole point of the control scheme.  Primitives:
//
//   ROT_A(U) / ROT_B(U)    U on every A / B cell
//   CP_AB(theta)           controlled-phase on every pair (2k, 2k+1)
//   CP_BA(theta)           controlled-phase on every pair (2k+1, 2k+2)
//   RESET_A / RESET_B      measure-and-clear every A / B cell
//   MEASURE_A / MEASURE_B  read out every A / B cell (ascending order)
//
// Macros are named composite operations the hardware supports as units:
//
//   CNOT_AB / CNOT_BA      controlled-X across every AB / BA pair
//   SWAP_AB / SWAP_BA      content exchange across every AB / BA pair
//   SHIFT_B                cyclic translation of the B sublattice by a
//                          number of B-cell spacings (3 spacings = one
//                          6-cell unit); A contents stay put
//   CTRL_U_BA(U)           controlled-U, control B, target its right A
//   FLIP_B_SANDWICH        X on every B cell whose two A neighbours are 1
//   CRESET_BA              clear the A right-neighbour of every B = 1;
//                          rejects quantum controls outright
//
// CNOT and SWAP have exact primitive expansions.  CTRL_U_BA expands via
// the two-CZ ABC construction; the expansion additionally phases the
// last B cell (which has no right A partner), so it only reproduces the
// macro verbatim when that cell is 0.  SHIFT_B's swap-network realization
// counter-translates the A sublattice, so the macro is kept native and
// the network is provided separately for cross-checks on blank-A states.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "globalctl/chain_state.hpp"
#include "globalctl/errors.hpp"
#include "globalctl/layout.hpp"
#include "globalctl/unitary.hpp"

namespace globalctl {

enum class Op {
  RotA,
  RotB,
  CpAb,
  CpBa,
  ResetA,
  ResetB,
  MeasureA,
  MeasureB,
  Macro
};

enum class MacroOp {
  CnotAb,
  CnotBa,
  SwapAb,
  SwapBa,
  ShiftB,
  CtrlUBa,
  FlipBSandwich,
  CresetBa
};

struct Instruction {
  Op op = Op::RotA;
  MacroOp macro = MacroOp::CnotAb;
  double theta = 0;                 // CP_AB / CP_BA
  Unitary1 u;                       // ROT_* / CTRL_U_BA
  std::optional<std::pair<std::string, double>> axis_angle;  // u provenance
  int dir = +1;                     // SHIFT_B: +1 right, -1 left
  int spacings = 3;                 // SHIFT_B: B-cell spacings
  std::string tag;                  // free-form annotation

  static Instruction rot_a(const Unitary1& u) {
    Instruction i;
    i.op = Op::RotA;
    i.u = u;
    return i;
  }
  static Instruction rot_b(const Unitary1& u) {
    Instruction i;
    i.op = Op::RotB;
    i.u = u;
    return i;
  }
  static Instruction rot_a_axis(const std::string& ax, double angle) {
    Instruction i = rot_a(Unitary1::axis_angle(ax, angle));
    i.axis_angle = {ax, angle};
    return i;
  }
  static Instruction rot_b_axis(const std::string& ax, double angle) {
    Instruction i = rot_b(Unitary1::axis_angle(ax, angle));
    i.axis_angle = {ax, angle};
    return i;
  }
  static Instruction cp_ab(double theta) {
    Instruction i;
    i.op = Op::CpAb;
    i.theta = theta;
    return i;
  }
  static Instruction cp_ba(double theta) {
    Instruction i;
    i.op = Op::CpBa;
    i.theta = theta;
    return i;
  }
  static Instruction reset_a() { return simple(Op::ResetA); }
  static Instruction reset_b() { return simple(Op::ResetB); }
  static Instruction measure_a() { return simple(Op::MeasureA); }
  static Instruction measure_b() { return simple(Op::MeasureB); }

  static Instruction cnot_ab() { return mac(MacroOp::CnotAb); }
  static Instruction cnot_ba() { return mac(MacroOp::CnotBa); }
  static Instruction swap_ab() { return mac(MacroOp::SwapAb); }
  static Instruction swap_ba() { return mac(MacroOp::SwapBa); }
  static Instruction shift_b(int dir, int spacings = 3) {
    Instruction i = mac(MacroOp::ShiftB);
    if (dir != 1 && dir != -1) throw BadConfig("shift dir must be +-1");
    if (spacings < 1) throw BadConfig("shift spacings must be >= 1");
    i.dir = dir;
    i.spacings = spacings;
    return i;
  }
  static Instruction ctrl_u_ba(const Unitary1& u) {
    Instruction i = mac(MacroOp::CtrlUBa);
    i.u = u;
    return i;
  }
  static Instruction flip_b_sandwich() { return mac(MacroOp::FlipBSandwich); }
  static Instruction creset_ba() { return mac(MacroOp::CresetBa); }

 private:
  static Instruction simple(Op op) {
    Instruction i;
    i.op = op;
    return i;
  }
  static Instruction mac(MacroOp m) {
    Instruction i;
    i.op = Op::Macro;
    i.macro = m;
    return i;
  }
};

using PulseProgram = std::vector<Instruction>;

struct MeasurementRecord {
  std::size_t instr = 0;   // index into the program
  int sublattice = 0;      // 0 = A, 1 = B
  std::vector<int> bits;   // ascending cell order within the sublattice
};

struct RunStats {
  std::uint64_t steps = 0;
  std::vector<MeasurementRecord> measurements;
};

// Cost model: one step per global pulse; composite macros cost their
// standard realizations (CNOT 3, SWAP 9, CTRL_U 6, SHIFT 2 per spacing).
inline std::uint64_t step_cost(const Instruction& in) {
  if (in.op != Op::Macro) return 1;
  switch (in.macro) {
    case MacroOp::CnotAb:
    case MacroOp::CnotBa:
      return 3;
    case MacroOp::SwapAb:
    case MacroOp::SwapBa:
      return 9;
    case MacroOp::ShiftB:
      return 2 * static_cast<std::uint64_t>(in.spacings);
    case MacroOp::CtrlUBa:
      return 6;
    case MacroOp::FlipBSandwich:
    case MacroOp::CresetBa:
      return 1;
  }
  return 1;
}

namespace detail {

inline void shift_b_cells(ChainState& s, int dir, int spacings) {
  const int n = s.n();
  const int nb = n / 2;
  const int k = ((dir * spacings) % nb + nb) % nb;
  std::vector<int> dest(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dest[static_cast<std::size_t>(i)] = i;
  for (int b = 0; b < nb; ++b)
    dest[static_cast<std::size_t>(2 * b + 1)] = 2 * ((b + k) % nb) + 1;
  s.permute_cells(dest);
}

inline void swap_pairs(ChainState& s, int first) {
  // first = 0: pairs (2k, 2k+1); first = 1: pairs (2k+1, 2k+2).
  const int n = s.n();
  std::vector<int> dest(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dest[static_cast<std::size_t>(i)] = i;
  for (int a = first; a + 1 < n; a += 2) {
    dest[static_cast<std::size_t>(a)] = a + 1;
    dest[static_cast<std::size_t>(a + 1)] = a;
  }
  s.permute_cells(dest);
}

}  // namespace detail

inline void apply_instruction(ChainState& s, const Instruction& in,
                              RngStream& rng, RunStats* stats = nullptr,
                              std::size_t instr_index = 0) {
  const int n = s.n();
  switch (in.op) {
    case Op::RotA:
      for (int i = 0; i < n; i += 2) s.apply_unitary1(i, in.u);
      break;
    case Op::RotB:
      for (int i = 1; i < n; i += 2) s.apply_unitary1(i, in.u);
      break;
    case Op::CpAb:
      for (int a = 0; a + 1 < n; a += 2) s.apply_cphase(a, a + 1, in.theta);
      break;
    case Op::CpBa:
      for (int b = 1; b + 1 < n; b += 2) s.apply_cphase(b, b + 1, in.theta);
      break;
    case Op::ResetA:
      for (int i = 0; i < n; i += 2) s.reset(i, rng);
      break;
    case Op::ResetB:
      for (int i = 1; i < n; i += 2) s.reset(i, rng);
      break;
    case Op::MeasureA:
    case Op::MeasureB: {
      const int parity = in.op == Op::MeasureB ? 1 : 0;
      MeasurementRecord rec;
      rec.instr = instr_index;
      rec.sublattice = parity;
      for (int i = parity; i < n; i += 2) rec.bits.push_back(s.measure(i, rng));
      if (stats) stats->measurements.push_back(std::move(rec));
      break;
    }
    case Op::Macro:
      switch (in.macro) {
        case MacroOp::CnotAb:
          for (int a = 0; a + 1 < n; a += 2) s.apply_cnot(a, a + 1);
          break;
        case MacroOp::CnotBa:
          for (int b = 1; b + 1 < n; b += 2) s.apply_cnot(b, b + 1);
          break;
        case MacroOp::SwapAb:
          detail::swap_pairs(s, 0);
          break;
        case MacroOp::SwapBa:
          detail::swap_pairs(s, 1);
          break;
        case MacroOp::ShiftB:
          detail::shift_b_cells(s, in.dir, in.spacings);
          break;
        case MacroOp::CtrlUBa:
          for (int b = 1; b + 1 < n; b += 2)
            s.apply_controlled_unitary(b, b + 1, in.u);
          break;
        case MacroOp::FlipBSandwich:
          for (int b = 1; b + 1 < n; b += 2) s.apply_ccx(b - 1, b + 1, b);
          break;
        case MacroOp::CresetBa:
          for (int b = 1; b + 1 < n; b += 2) {
            if (!s.is_classical(b))
              throw QuantumControlledReset(
                  "CRESET_BA with a non-classical control at cell " +
                  std::to_string(b));
            if (s.classical_bit(b) == 1) s.reset(b + 1, rng);
          }
          break;
      }
      break;
  }
  if (stats) stats->steps += step_cost(in);
}

inline RunStats run_program(ChainState& s, const PulseProgram& p,
                            RngStream& rng) {
  RunStats stats;
  for (std::size_t i = 0; i < p.size(); ++i)
    apply_instruction(s, p[i], rng, &stats, i);
  return stats;
}

// --- macro expansion ------------------------------------------------------

// Decompose U as e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZyzAngles {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

inline ZyzAngles zyz_decompose(const Unitary1& u) {
  ZyzAngles r;
  // Strip the determinant phase: det = e^{2 i alpha}.
  r.alpha = std::arg(u.det()) / 2;
  const Unitary1 v = u.scaled(std::polar(1.0, -r.alpha));
  // v in SU(2): [[ c e^{-i(d+b)/2}, -s e^{-i(d-b)/2} ],
  //              [ s e^{ i(d-b)/2},  c e^{ i(d+b)/2} ]]
  // with c = cos(gamma/2), s = sin(gamma/2), beta applied first.
  const double c = std::clamp(std::abs(v(0, 0)), 0.0, 1.0);
  r.gamma = 2 * std::acos(c);
  if (std::abs(v(1, 0)) < 1e-14) {
    // Diagonal: only delta + beta matters.
    r.gamma = 0;
    r.beta = 2 * std::arg(v(1, 1));
    r.delta = 0;
  } else if (std::abs(v(0, 0)) < 1e-14) {
    // Antidiagonal: only delta - beta matters.
    r.gamma = kPi;
    r.beta = 0;
    r.delta = 2 * std::arg(v(1, 0));
  } else {
    const double sum = 2 * std::arg(v(1, 1));   // delta + beta
    const double diff = 2 * std::arg(v(1, 0));  // delta - beta
    r.delta = (sum + diff) / 2;
    r.beta = (sum - diff) / 2;
  }
  return r;
}

// Expand the expandable macros into primitive pulses.  SHIFT_B,
// FLIP_B_SANDWICH and CRESET_BA are scheme primitives and pass through.
inline PulseProgram expand_macros(const PulseProgram& p) {
  PulseProgram out;
  const auto h = Unitary1::hadamard();
  for (const Instruction& in : p) {
    if (in.op != Op::Macro) {
      out.push_back(in);
      continue;
    }
    switch (in.macro) {
      case MacroOp::CnotAb:
        out.push_back(Instruction::rot_b(h));
        out.push_back(Instruction::cp_ab(kPi));
        out.push_back(Instruction::rot_b(h));
        break;
      case MacroOp::CnotBa:
        out.push_back(Instruction::rot_a(h));
        out.push_back(Instruction::cp_ba(kPi));
        out.push_back(Instruction::rot_a(h));
        break;
      case MacroOp::SwapAb:
        for (int round = 0; round < 3; ++round) {
          const bool target_b = round != 1;
          out.push_back(target_b ? Instruction::rot_b(h)
                                 : Instruction::rot_a(h));
          out.push_back(Instruction::cp_ab(kPi));
          out.push_back(target_b ? Instruction::rot_b(h)
                                 : Instruction::rot_a(h));
        }
        break;
      case MacroOp::SwapBa:
        for (int round = 0; round < 3; ++round) {
          const bool target_a = round != 1;
          out.push_back(target_a ? Instruction::rot_a(h)
                                 : Instruction::rot_b(h));
          out.push_back(Instruction::cp_ba(kPi));
          out.push_back(target_a ? Instruction::rot_a(h)
                                 : Instruction::rot_b(h));
        }
        break;
      case MacroOp::CtrlUBa: {
        // ABC construction with CX = H.CZ.H folded into the A pulses:
        // time order C', CZ, B', CZ, A', then the alpha phase on B.
        const ZyzAngles z = zyz_decompose(in.u);
        const Unitary1 ax =
            Unitary1::rz(z.beta) * Unitary1::ry(z.gamma / 2);
        const Unitary1 bx = Unitary1::ry(-z.gamma / 2) *
                            Unitary1::rz(-(z.delta + z.beta) / 2);
        const Unitary1 cx = Unitary1::rz((z.delta - z.beta) / 2);
        out.push_back(Instruction::rot_a(h * cx));
        out.push_back(Instruction::cp_ba(kPi));
        out.push_back(Instruction::rot_a(h * bx * h));
        out.push_back(Instruction::cp_ba(kPi));
        out.push_back(Instruction::rot_a(ax * h));
        out.push_back(Instruction::rot_b(Unitary1::phase(z.alpha)));
        break;
      }
      case MacroOp::ShiftB:
      case MacroOp::FlipBSandwich:
      case MacroOp::CresetBa:
        out.push_back(in);
        break;
    }
  }
  return out;
}

// The swap-network realization of a one-spacing B translation.  It also
// drags the A sublattice one spacing the other way, so it matches
// SHIFT_B only on states whose A cells are all zero.
inline PulseProgram swap_network_shift(int dir, int spacings = 3) {
  PulseProgram out;
  for (int k = 0; k < spacings; ++k) {
    if (dir > 0) {
      out.push_back(Instruction::swap_ba());
      out.push_back(Instruction::swap_ab());
    } else {
      out.push_back(Instruction::swap_ab());
      out.push_back(Instruction::swap_ba());
    }
  }
  return out;
}

// --- serialization ---------------------------------------------------------

inline std::string op_name(Op op) {
  switch (op) {
    case Op::RotA: return "ROT_A";
    case Op::RotB: return "ROT_B";
    case Op::CpAb: return "CP_AB";
    case Op::CpBa: return "CP_BA";
    case Op::ResetA: return "RESET_A";
    case Op::ResetB: return "RESET_B";
    case Op::MeasureA: return "MEASURE_A";
    case Op::MeasureB: return "MEASURE_B";
    case Op::Macro: return "MACRO";
  }
  return "?";
}

inline std::string macro_name(MacroOp m) {
  switch (m) {
    case MacroOp::CnotAb: return "CNOT_AB";
    case MacroOp::CnotBa: return "CNOT_BA";
    case MacroOp::SwapAb: return "SWAP_AB";
    case MacroOp::SwapBa: return "SWAP_BA";
    case MacroOp::ShiftB: return "SHIFT_B";
    case MacroOp::CtrlUBa: return "CTRL_U_BA";
    case MacroOp::FlipBSandwich: return "FLIP_B_SANDWICH";
    case MacroOp::CresetBa: return "CRESET_BA";
  }
  return "?";
}

inline MacroOp macro_from_name(const std::string& s) {
  if (s == "CNOT_AB") return MacroOp::CnotAb;
  if (s == "CNOT_BA") return MacroOp::CnotBa;
  if (s == "SWAP_AB") return MacroOp::SwapAb;
  if (s == "SWAP_BA") return MacroOp::SwapBa;
  if (s == "SHIFT_B") return MacroOp::ShiftB;
  if (s == "CTRL_U_BA") return MacroOp::CtrlUBa;
  if (s == "FLIP_B_SANDWICH") return MacroOp::FlipBSandwich;
  if (s == "CRESET_BA") return MacroOp::CresetBa;
  throw UnknownMacro("unknown macro: " + s);
}

inline nlohmann::json unitary_to_json(const Instruction& in) {
  if (in.axis_angle)
    return {{"axis", in.axis_angle->first}, {"angle", in.axis_angle->second}};
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i)
    rows.push_back({in.u.m[static_cast<std::size_t>(i)].real(),
                    in.u.m[static_cast<std::size_t>(i)].imag()});
  return {{"rows", rows}};
}

inline Unitary1 unitary_from_json(const nlohmann::json& j,
                                  Instruction* provenance = nullptr) {
  if (j.contains("axis")) {
    const std::string ax = j.at("axis").get<std::string>();
    const double angle = j.at("angle").get<double>();
    if (provenance) provenance->axis_angle = {ax, angle};
    return Unitary1::axis_angle(ax, angle);
  }
  const auto rows = j.at("rows");
  if (rows.size() != 4) throw BadConfig("unitary rows must have 4 entries");
  Unitary1 u;
  for (int i = 0; i < 4; ++i)
    u.m[static_cast<std::size_t>(i)] = {rows[i][0].get<double>(),
                                        rows[i][1].get<double>()};
  return u;
}

inline nlohmann::json instruction_to_json(const Instruction& in) {
  nlohmann::json j{{"op", op_name(in.op)}};
  switch (in.op) {
    case Op::RotA:
    case Op::RotB:
      j["u"] = unitary_to_json(in);
      break;
    case Op::CpAb:
    case Op::CpBa:
      j["theta"] = in.theta;
      break;
    case Op::Macro:
      j["macro"] = macro_name(in.macro);
      if (in.macro == MacroOp::CtrlUBa) j["u"] = unitary_to_json(in);
      if (in.macro == MacroOp::ShiftB)
        j["args"] = {{"dir", in.dir > 0 ? "right" : "left"},
                     {"spacings", in.spacings}};
      break;
    default:
      break;
  }
  if (!in.tag.empty()) j["tag"] = in.tag;
  return j;
}

inline Instruction instruction_from_json(const nlohmann::json& j) {
  const std::string op = j.at("op").get<std::string>();
  Instruction in;
  if (op == "ROT_A" || op == "ROT_B") {
    in.op = op == "ROT_A" ? Op::RotA : Op::RotB;
    in.u = unitary_from_json(j.at("u"), &in);
  } else if (op == "CP_AB" || op == "CP_BA") {
    in.op = op == "CP_AB" ? Op::CpAb : Op::CpBa;
    in.theta = j.at("theta").get<double>();
  } else if (op == "RESET_A") {
    in.op = Op::ResetA;
  } else if (op == "RESET_B") {
    in.op = Op::ResetB;
  } else if (op == "MEASURE_A") {
    in.op = Op::MeasureA;
  } else if (op == "MEASURE_B") {
    in.op = Op::MeasureB;
  } else if (op == "MACRO") {
    in.op = Op::Macro;
    in.macro = macro_from_name(j.at("macro").get<std::string>());
    if (in.macro == MacroOp::CtrlUBa)
      in.u = unitary_from_json(j.at("u"), &in);
    if (in.macro == MacroOp::ShiftB && j.contains("args")) {
      const auto& a = j.at("args");
      if (a.contains("dir"))
        in.dir = a.at("dir").get<std::string>() == "left" ? -1 : +1;
      if (a.contains("spacings")) in.spacings = a.at("spacings").get<int>();
    }
  } else {
    throw BadConfig("unknown op: " + op);
  }
  if (j.contains("tag")) in.tag = j.at("tag").get<std::string>();
  return in;
}

// JSON-lines: one header object, then one object per instruction.
inline void write_program_jsonl(std::ostream& os, const std::string& name,
                                const Layout& layout, const PulseProgram& p) {
  nlohmann::json header{{"program", name},
                        {"fingerprint", layout.fingerprint()},
                        {"n", layout.n()}};
  os << header.dump() << "\n";
  for (const Instruction& in : p) os << instruction_to_json(in).dump() << "\n";
}

struct NamedProgram {
  std::string name;
  PulseProgram program;
};

inline NamedProgram read_program_jsonl(std::istream& is,
                                       const Layout& layout) {
  std::string line;
  if (!std::getline(is, line)) throw BadConfig("empty program file");
  const auto header = nlohmann::json::parse(line);
  if (header.contains("fingerprint") &&
      header.at("fingerprint").get<std::uint64_t>() != layout.fingerprint())
    throw FingerprintMismatch(
        "program was generated for a different layout");
  if (header.contains("n") && header.at("n").get<int>() != layout.n())
    throw LengthMismatch("program chain length disagrees with layout");
  NamedProgram out;
  out.name = header.value("program", "");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.program.push_back(instruction_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace globalctl
