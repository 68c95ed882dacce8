#pragma once

// Hybrid classical/quantum state of a 1D chain.
//
// Most cells in the control schemes this library simulates are classical
// bits almost all of the time; a few carry single-qubit superpositions,
// and only a small cluster is genuinely entangled at any instant.  The
// state tracks three tiers per cell:
//
//   Classical   - a definite bit, no amplitudes stored
//   Pure        - an unentangled single-qubit amplitude pair
//   Registered  - a slot in the one shared amplitude register that holds
//                 every entangled cell (ascending chain index = ascending
//                 bit significance)
//
// Invariants maintained after every operation:
//   * a Pure cell has both |amp| > kDemoteTol (else it is demoted),
//   * the register never contains a separable slot (demote scan),
//   * the register has width 0 or >= 2 (a lone slot becomes Pure),
//   * global phase is explicit, so classical fast paths are exact.
//
// Measurement draw contract: an outcome whose probability is within
// kMeasureDetTol of 0 or 1 is resolved deterministically with NO rng
// draw; otherwise exactly one uniform draw u decides it (outcome 1 iff
// u < p1).  Multi-cell sweeps measure in ascending chain index order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "globalctl/rng.hpp"
#include "globalctl/unitary.hpp"

namespace globalctl {

inline constexpr double kDemoteTol = 1e-12;
inline constexpr double kMeasureDetTol = 1e-9;

enum class CellKind { Classical, Pure, Registered };

struct Cell {
  CellKind kind = CellKind::Classical;
  int bit = 0;        // Classical only
  cplx amp0, amp1;    // Pure only, normalized
  int slot = -1;      // Registered only: bit position in the register
};

class ChainState {
 public:
  explicit ChainState(int n) : cells_(static_cast<std::size_t>(n)) {
    if (n <= 0) throw std::invalid_argument("chain length must be positive");
  }

  static ChainState from_bits(const std::vector<int>& bits) {
    ChainState s(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != 0 && bits[i] != 1)
        throw std::invalid_argument("bit pattern entries must be 0 or 1");
      s.cells_[i].bit = bits[i];
    }
    return s;
  }

  int n() const { return static_cast<int>(cells_.size()); }
  const Cell& cell(int i) const { return cells_.at(static_cast<std::size_t>(i)); }
  cplx global_phase() const { return global_phase_; }

  bool is_classical(int i) const { return cell(i).kind == CellKind::Classical; }

  int classical_bit(int i) const {
    const Cell& c = cell(i);
    if (c.kind != CellKind::Classical)
      throw std::logic_error("classical_bit on non-classical cell");
    return c.bit;
  }

  bool all_classical() const {
    for (const Cell& c : cells_)
      if (c.kind != CellKind::Classical) return false;
    return true;
  }

  bool sublattice_classical(int parity) const {
    for (int i = parity; i < n(); i += 2)
      if (!is_classical(i)) return false;
    return true;
  }

  std::vector<int> quantum_cells() const {
    std::vector<int> out;
    for (int i = 0; i < n(); ++i)
      if (!is_classical(i)) out.push_back(i);
    return out;
  }

  int register_width() const { return static_cast<int>(reg_cells_.size()); }
  int max_register_width() const { return max_reg_width_; }
  int max_quantum_cells() const { return max_quantum_; }

  // Direct classical write; only legal on a cell that is already classical.
  void set_bit(int i, int b) {
    Cell& c = cells_.at(static_cast<std::size_t>(i));
    if (c.kind != CellKind::Classical)
      throw std::logic_error("set_bit on non-classical cell");
    c.bit = b;
  }

  void apply_unitary1(int i, const Unitary1& u) {
    Cell& c = cells_.at(static_cast<std::size_t>(i));
    switch (c.kind) {
      case CellKind::Classical: {
        if (u.is_diagonal()) {
          global_phase_ *= u(c.bit, c.bit);
          return;
        }
        if (u.is_antidiagonal()) {
          global_phase_ *= u(1 - c.bit, c.bit);
          c.bit = 1 - c.bit;
          return;
        }
        c.kind = CellKind::Pure;
        c.amp0 = u(0, c.bit);
        c.amp1 = u(1, c.bit);
        c.bit = 0;
        demote_pure(i);
        return;
      }
      case CellKind::Pure: {
        const cplx a0 = u(0, 0) * c.amp0 + u(0, 1) * c.amp1;
        const cplx a1 = u(1, 0) * c.amp0 + u(1, 1) * c.amp1;
        c.amp0 = a0;
        c.amp1 = a1;
        demote_pure(i);
        return;
      }
      case CellKind::Registered: {
        reg_apply_unitary(c.slot, u);
        demote_scan();
        return;
      }
    }
  }

  // diag(1,1,1,e^{i theta}) on cells (i, j).
  void apply_cphase(int i, int j, double theta) {
    if (i == j) throw std::invalid_argument("cphase needs distinct cells");
    const cplx ph = std::polar(1.0, theta);
    if (std::abs(ph - cplx{1, 0}) <= kDemoteTol) return;

    Cell& ci = cells_.at(static_cast<std::size_t>(i));
    Cell& cj = cells_.at(static_cast<std::size_t>(j));

    if (ci.kind == CellKind::Classical) {
      if (ci.bit == 0) return;
      apply_unitary1(j, Unitary1::phase(theta));
      return;
    }
    if (cj.kind == CellKind::Classical) {
      if (cj.bit == 0) return;
      apply_unitary1(i, Unitary1::phase(theta));
      return;
    }

    // Both cells carry superpositions: bring them into the register.
    join(i);
    join(j);
    const int si = cells_[static_cast<std::size_t>(i)].slot;
    const int sj = cells_[static_cast<std::size_t>(j)].slot;
    const std::size_t mi = 1ULL << si, mj = 1ULL << sj;
    for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx)
      if ((idx & mi) && (idx & mj)) reg_amps_[idx] *= ph;
    demote_scan();
  }

  // |1><1|_c (x) U_t + |0><0|_c (x) 1.  Classical controls never touch
  // the register; a classical 1 degrades to a plain single-cell unitary.
  void apply_controlled_unitary(int c, int t, const Unitary1& u) {
    if (c == t) throw std::invalid_argument("controlled op needs distinct cells");
    if (u.is_identity_up_to_phase()) {
      // Pure control-phase: diag(1, 1, ph, ph) acts on the control alone.
      const cplx ph = u(0, 0);
      apply_unitary1(c, Unitary1::phase(std::arg(ph)));
      return;
    }
    Cell& cc = cells_.at(static_cast<std::size_t>(c));
    if (cc.kind == CellKind::Classical) {
      if (cc.bit == 1) apply_unitary1(t, u);
      return;
    }
    if (u.is_diagonal() && is_classical(t)) {
      // Target is an eigenstate: the whole gate is a phase on the control.
      const cplx ph = u(classical_bit(t), classical_bit(t));
      apply_unitary1(c, Unitary1::from_rows(1, 0, 0, ph));
      return;
    }
    join(c);
    join(t);
    const std::size_t mc = 1ULL << cells_[static_cast<std::size_t>(c)].slot;
    const std::size_t mt = 1ULL << cells_[static_cast<std::size_t>(t)].slot;
    for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx) {
      if (!(idx & mc) || (idx & mt)) continue;
      const cplx a0 = reg_amps_[idx], a1 = reg_amps_[idx | mt];
      reg_amps_[idx] = u(0, 0) * a0 + u(0, 1) * a1;
      reg_amps_[idx | mt] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    demote_scan();
  }

  // Exact controlled-X: pure amplitude relabeling on the quantum path,
  // pure bit flip on the classical path (no rounding either way).
  void apply_cnot(int c, int t) {
    if (c == t) throw std::invalid_argument("cnot needs distinct cells");
    Cell& cc = cells_.at(static_cast<std::size_t>(c));
    if (cc.kind == CellKind::Classical) {
      if (cc.bit == 1) apply_unitary1(t, Unitary1::pauli_x());
      return;
    }
    join(c);
    join(t);
    const std::size_t mc = 1ULL << cells_[static_cast<std::size_t>(c)].slot;
    const std::size_t mt = 1ULL << cells_[static_cast<std::size_t>(t)].slot;
    for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx)
      if ((idx & mc) && !(idx & mt))
        std::swap(reg_amps_[idx], reg_amps_[idx | mt]);
    demote_scan();
  }

  // Doubly-controlled X.  Classical controls peel off; only a genuinely
  // quantum control pair costs register width.
  void apply_ccx(int c1, int c2, int t) {
    if (c1 == c2 || c1 == t || c2 == t)
      throw std::invalid_argument("ccx needs three distinct cells");
    const Cell& a = cell(c1);
    const Cell& b = cell(c2);
    if (a.kind == CellKind::Classical) {
      if (a.bit == 1) apply_cnot(c2, t);
      return;
    }
    if (b.kind == CellKind::Classical) {
      if (b.bit == 1) apply_cnot(c1, t);
      return;
    }
    join(c1);
    join(c2);
    join(t);
    const std::size_t m1 = 1ULL << cells_[static_cast<std::size_t>(c1)].slot;
    const std::size_t m2 = 1ULL << cells_[static_cast<std::size_t>(c2)].slot;
    const std::size_t mt = 1ULL << cells_[static_cast<std::size_t>(t)].slot;
    for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx)
      if ((idx & m1) && (idx & m2) && !(idx & mt))
        std::swap(reg_amps_[idx], reg_amps_[idx | mt]);
    demote_scan();
  }

  // Relocate cell contents: dest[i] is the new index of what sits at i.
  // Register amplitudes are reindexed so chain order keeps matching slot
  // significance; the state itself is untouched (exact operation).
  void permute_cells(const std::vector<int>& dest) {
    const int nn = n();
    if (static_cast<int>(dest.size()) != nn)
      throw std::invalid_argument("permutation size mismatch");
    std::vector<int> seen(static_cast<std::size_t>(nn), 0);
    for (int d : dest) {
      if (d < 0 || d >= nn || seen[static_cast<std::size_t>(d)]++)
        throw std::invalid_argument("not a permutation");
    }
    std::vector<Cell> next(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i)
      next[static_cast<std::size_t>(dest[static_cast<std::size_t>(i)])] =
          cells_[static_cast<std::size_t>(i)];
    cells_ = std::move(next);
    if (!reg_cells_.empty()) {
      // Old slot s lived at chain index reg_cells_[s], which moved to
      // dest[...]; sort the new positions to get the new slot order.
      std::vector<int> moved(reg_cells_.size());
      for (std::size_t s = 0; s < reg_cells_.size(); ++s)
        moved[s] = dest[static_cast<std::size_t>(reg_cells_[s])];
      std::vector<int> sorted = moved;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> new_slot(reg_cells_.size());
      for (std::size_t s = 0; s < moved.size(); ++s)
        new_slot[s] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), moved[s]) -
            sorted.begin());
      std::vector<cplx> amps(reg_amps_.size());
      for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx) {
        std::size_t to = 0;
        for (std::size_t s = 0; s < new_slot.size(); ++s)
          if (idx & (1ULL << s)) to |= 1ULL << new_slot[s];
        amps[to] = reg_amps_[idx];
      }
      reg_amps_ = std::move(amps);
      reg_cells_ = std::move(sorted);
      for (std::size_t s = 0; s < reg_cells_.size(); ++s)
        cells_[static_cast<std::size_t>(reg_cells_[s])].slot =
            static_cast<int>(s);
    }
  }

  int measure(int i, RngStream& rng) {
    Cell& c = cells_.at(static_cast<std::size_t>(i));
    switch (c.kind) {
      case CellKind::Classical:
        return c.bit;
      case CellKind::Pure: {
        const double p1 = std::norm(c.amp1);
        const int outcome = resolve_outcome(p1, rng);
        const cplx amp = outcome ? c.amp1 : c.amp0;
        global_phase_ *= amp / std::abs(amp);
        c.kind = CellKind::Classical;
        c.bit = outcome;
        return outcome;
      }
      case CellKind::Registered: {
        const int slot = c.slot;
        const std::size_t m = 1ULL << slot;
        double p1 = 0;
        for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx)
          if (idx & m) p1 += std::norm(reg_amps_[idx]);
        const int outcome = resolve_outcome(p1, rng);
        const double keep = outcome ? p1 : 1.0 - p1;
        const double scale = 1.0 / std::sqrt(std::max(keep, 1e-300));
        // Project, renormalize, and drop the slot from the register.
        std::vector<cplx> next(reg_amps_.size() >> 1);
        for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx) {
          if (((idx & m) != 0) != (outcome != 0)) continue;
          const std::size_t lo = idx & (m - 1);
          const std::size_t hi = (idx >> (slot + 1)) << slot;
          next[hi | lo] = reg_amps_[idx] * scale;
        }
        reg_amps_ = std::move(next);
        reg_cells_.erase(reg_cells_.begin() + slot);
        c.kind = CellKind::Classical;
        c.bit = outcome;
        c.slot = -1;
        for (std::size_t k = 0; k < reg_cells_.size(); ++k)
          cells_[static_cast<std::size_t>(reg_cells_[k])].slot = static_cast<int>(k);
        collapse_register_if_trivial();
        demote_scan();
        return outcome;
      }
    }
    return 0;  // unreachable
  }

  // Measure-and-flip-to-zero.  Consumes a draw exactly when the
  // measurement it contains does.
  void reset(int i, RngStream& rng) {
    measure(i, rng);
    Cell& c = cells_.at(static_cast<std::size_t>(i));
    c.bit = 0;
  }

  // Dense amplitude vector, basis index bit i = cell i (cell 0 least
  // significant).  Intended for cross-checks on short chains.
  std::vector<cplx> to_dense() const {
    const int nn = n();
    if (nn > 24) throw std::logic_error("to_dense limited to n <= 24");
    const std::size_t dim = 1ULL << nn;
    std::vector<cplx> out(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      cplx a = global_phase_;
      std::size_t reg_idx = 0;
      bool zero = false;
      for (int i = 0; i < nn && !zero; ++i) {
        const int b = (idx >> i) & 1;
        const Cell& c = cells_[static_cast<std::size_t>(i)];
        switch (c.kind) {
          case CellKind::Classical:
            if (c.bit != b) zero = true;
            break;
          case CellKind::Pure:
            a *= b ? c.amp1 : c.amp0;
            break;
          case CellKind::Registered:
            reg_idx |= static_cast<std::size_t>(b) << c.slot;
            break;
        }
      }
      if (zero) continue;
      if (!reg_cells_.empty()) a *= reg_amps_[reg_idx];
      out[idx] = a;
    }
    return out;
  }

 private:
  std::vector<Cell> cells_;
  cplx global_phase_{1, 0};
  std::vector<int> reg_cells_;  // ascending chain indices; position = slot
  std::vector<cplx> reg_amps_;  // size 2^width
  int max_reg_width_ = 0;
  int max_quantum_ = 0;

  int resolve_outcome(double p1, RngStream& rng) {
    if (p1 <= kMeasureDetTol) return 0;
    if (p1 >= 1.0 - kMeasureDetTol) return 1;
    return rng.uniform() < p1 ? 1 : 0;
  }

  void track_peaks() {
    max_reg_width_ = std::max(max_reg_width_, register_width());
    int q = 0;
    for (const Cell& c : cells_)
      if (c.kind != CellKind::Classical) ++q;
    max_quantum_ = std::max(max_quantum_, q);
  }

  void demote_pure(int i) {
    Cell& c = cells_.at(static_cast<std::size_t>(i));
    if (c.kind != CellKind::Pure) return;
    const double n0 = std::abs(c.amp0), n1 = std::abs(c.amp1);
    if (n1 <= kDemoteTol) {
      global_phase_ *= c.amp0 / n0;
      c.kind = CellKind::Classical;
      c.bit = 0;
    } else if (n0 <= kDemoteTol) {
      global_phase_ *= c.amp1 / n1;
      c.kind = CellKind::Classical;
      c.bit = 1;
    }
    track_peaks();
  }

  void reg_apply_unitary(int slot, const Unitary1& u) {
    const std::size_t m = 1ULL << slot;
    for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx) {
      if (idx & m) continue;
      const cplx a0 = reg_amps_[idx], a1 = reg_amps_[idx | m];
      reg_amps_[idx] = u(0, 0) * a0 + u(0, 1) * a1;
      reg_amps_[idx | m] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  // Pull cell i into the register (promoting through Pure as needed),
  // keeping reg_cells_ sorted so chain order equals significance order.
  void join(int i) {
    Cell& c = cells_.at(static_cast<std::size_t>(i));
    if (c.kind == CellKind::Registered) return;
    cplx a0, a1;
    if (c.kind == CellKind::Classical) {
      a0 = c.bit ? cplx{0, 0} : cplx{1, 0};
      a1 = c.bit ? cplx{1, 0} : cplx{0, 0};
    } else {
      a0 = c.amp0;
      a1 = c.amp1;
    }
    const auto pos =
        std::lower_bound(reg_cells_.begin(), reg_cells_.end(), i);
    const int slot = static_cast<int>(pos - reg_cells_.begin());
    const std::size_t m = 1ULL << slot;
    std::vector<cplx> next(reg_amps_.empty() ? 2 : reg_amps_.size() * 2);
    if (reg_amps_.empty()) {
      next[0] = a0;
      next[m] = a1;
    } else {
      for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx) {
        const std::size_t lo = idx & (m - 1);
        const std::size_t hi = (idx >> slot) << (slot + 1);
        next[hi | lo] = reg_amps_[idx] * a0;
        next[hi | m | lo] = reg_amps_[idx] * a1;
      }
    }
    reg_amps_ = std::move(next);
    reg_cells_.insert(pos, i);
    c.kind = CellKind::Registered;
    c.amp0 = c.amp1 = 0;
    for (std::size_t k = 0; k < reg_cells_.size(); ++k)
      cells_[static_cast<std::size_t>(reg_cells_[k])].slot = static_cast<int>(k);
    track_peaks();
  }

  void collapse_register_if_trivial() {
    if (reg_cells_.size() != 1) return;
    const int i = reg_cells_[0];
    Cell& c = cells_[static_cast<std::size_t>(i)];
    c.kind = CellKind::Pure;
    c.slot = -1;
    c.amp0 = reg_amps_[0];
    c.amp1 = reg_amps_[1];
    reg_cells_.clear();
    reg_amps_.clear();
    demote_pure(i);
  }

  // Peel every separable slot out of the register.  A slot is separable
  // when the two half-vectors (slot bit 0 / slot bit 1) are parallel.
  void demote_scan() {
    bool changed = true;
    while (changed && !reg_cells_.empty()) {
      if (reg_cells_.size() == 1) {
        collapse_register_if_trivial();
        break;
      }
      changed = false;
      for (std::size_t k = 0; k < reg_cells_.size(); ++k) {
        if (try_peel(static_cast<int>(k))) {
          changed = true;
          break;
        }
      }
    }
    track_peaks();
  }

  bool try_peel(int slot) {
    const std::size_t m = 1ULL << slot;
    const std::size_t half = reg_amps_.size() >> 1;
    double n0sq = 0, n1sq = 0;
    for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx)
      ((idx & m) ? n1sq : n0sq) += std::norm(reg_amps_[idx]);

    const int cell_index = reg_cells_[static_cast<std::size_t>(slot)];
    std::vector<cplx> rest(half);
    cplx a0, a1;

    if (n1sq <= kDemoteTol * kDemoteTol) {
      a0 = 1;
      a1 = 0;
    } else if (n0sq <= kDemoteTol * kDemoteTol) {
      a0 = 0;
      a1 = 1;
    } else {
      // r1 must be parallel to r0: r1 = c * r0.
      cplx dot = 0;
      for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx)
        if (!(idx & m)) dot += std::conj(reg_amps_[idx]) * reg_amps_[idx | m];
      const cplx c = dot / n0sq;
      double resid = 0;
      for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx)
        if (!(idx & m))
          resid = std::max(resid,
                           std::abs(reg_amps_[idx | m] - c * reg_amps_[idx]));
      if (resid > kDemoteTol) return false;
      const double s = std::sqrt(1.0 + std::norm(c));
      a0 = 1.0 / s;
      a1 = c / s;
    }

    // Residual register = the slot-0 half scaled to unit norm; with the
    // factor normalized as (1, c)/s this is exact, including phases.
    // Only when the 0-branch is numerically empty does the 1-branch
    // carry the state.
    const bool from_one = (n0sq <= kDemoteTol * kDemoteTol);
    const double branch_norm = std::sqrt(from_one ? n1sq : n0sq);
    for (std::size_t idx = 0; idx < reg_amps_.size(); ++idx) {
      if (((idx & m) != 0) != from_one) continue;
      const std::size_t lo = idx & (m - 1);
      const std::size_t hi = (idx >> (slot + 1)) << slot;
      rest[hi | lo] = reg_amps_[idx] / branch_norm;
    }

    reg_amps_ = std::move(rest);
    reg_cells_.erase(reg_cells_.begin() + slot);
    Cell& c = cells_[static_cast<std::size_t>(cell_index)];
    c.kind = CellKind::Pure;
    c.slot = -1;
    c.amp0 = a0;
    c.amp1 = a1;
    for (std::size_t k = 0; k < reg_cells_.size(); ++k)
      cells_[static_cast<std::size_t>(reg_cells_[k])].slot = static_cast<int>(k);
    demote_pure(cell_index);
    collapse_register_if_trivial();
    return true;
  }
};

// Global-phase-insensitive max distance between two dense vectors:
// aligns b to a with phase arg(<b|a>) first.
inline double dense_distance_up_to_phase(const std::vector<cplx>& a,
                                         const std::vector<cplx>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dense vectors of different size");
  cplx dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += std::conj(b[i]) * a[i];
  const cplx ph = std::abs(dot) < 1e-300 ? cplx{1, 0} : dot / std::abs(dot);
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - ph * b[i]));
  return d;
}

}  // namespace globalctl
