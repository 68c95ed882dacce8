#pragma once

// Chain geometry.
//
// The chain is built from 6-cell units.  Even cells form the A
// sublattice, odd cells the B sublattice.  A layout reserves `margins`
// buffer units on each side of `n_comp` computational units:
//
//   unit u of the computational span starts at cell 6*(margins + u);
//   computational qubit q lives on cell 6*(margins + q)  (one per unit),
//   and its control-unit home is the B cell immediately right of it.
//
// When `block_len` > 0 the computational span is divided into blocks of
// that many units; each block owns a syndrome station:
//
//   result cell   = block base + 2          (A cell, persistent flag)
//   label bit m   = +4 cell of unit (block start + 1 + m), m ascending
//
// Label cells sit 6 apart so that no two persistent station bits are
// ever adjacent.  Labels store the block's hierarchy level in binary,
// bit 0 first; canonical labels follow the ruler pattern
// label(j) = min(v_L(j), depth) with v_L the largest power of the block
// count base dividing j and v_L(0) = depth.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "globalctl/chain_state.hpp"
#include "globalctl/errors.hpp"

namespace globalctl {

struct Layout {
  int margins = 0;
  int n_comp = 1;
  int block_len = 0;     // 0: no syndrome stations
  int concat_depth = 0;  // hierarchy depth when block_len > 0

  Layout() = default;
  Layout(int margins_, int n_comp_, int block_len_ = 0, int concat_depth_ = 0)
      : margins(margins_),
        n_comp(n_comp_),
        block_len(block_len_),
        concat_depth(concat_depth_) {
    validate();
  }

  void validate() const {
    if (margins < 0) throw BadConfig("margins must be >= 0");
    if (n_comp < 1) throw BadConfig("need at least one computational unit");
    if (block_len < 0) throw BadConfig("block_len must be >= 0");
    if (block_len > 0) {
      if (concat_depth < 1)
        throw BadConfig("station blocks need concat_depth >= 1");
      if (n_comp % block_len != 0)
        throw LengthMismatch("n_comp must be a multiple of block_len");
      if (label_width() > block_len - 1)
        throw InsufficientLength(
            "block too short to hold its label bits");
    } else if (concat_depth != 0) {
      throw BadConfig("concat_depth requires block_len > 0");
    }
  }

  int n_units() const { return 2 * margins + n_comp; }
  int n() const { return 6 * n_units(); }

  // First cell of computational unit u (0-based within the span).
  int unit_base(int u) const { return 6 * (margins + u); }

  int comp_cell(int q) const {
    require_comp_index(q);
    return unit_base(q);
  }
  int cu_home(int q) const { return comp_cell(q) + 1; }

  int n_blocks() const { return block_len > 0 ? n_comp / block_len : 0; }

  // Bits needed to store levels 0..concat_depth.
  int label_width() const {
    int w = 1, v = concat_depth;
    while (v >= 2) {
      v >>= 1;
      ++w;
    }
    return w;
  }

  int result_cell(int b) const {
    require_block_index(b);
    return unit_base(b * block_len) + 2;
  }
  int label_cell(int b, int m) const {
    require_block_index(b);
    if (m < 0 || m >= label_width())
      throw BadConfig("label bit index out of range");
    return unit_base(b * block_len + 1 + m) + 4;
  }

  bool is_comp_cell(int c) const {
    if (c % 6 != 0) return false;
    const int u = c / 6 - margins;
    return u >= 0 && u < n_comp;
  }

  bool is_result_cell(int c) const {
    if (block_len == 0 || c % 6 != 2) return false;
    const int u = (c - 2) / 6 - margins;
    return u >= 0 && u < n_comp && u % block_len == 0;
  }

  bool is_label_cell(int c) const {
    if (block_len == 0 || c % 6 != 4) return false;
    const int u = (c - 4) / 6 - margins;
    if (u < 0 || u >= n_comp) return false;
    const int r = u % block_len;
    return r >= 1 && r <= label_width();
  }

  // A cells that persist data across protocols and must survive sweeps.
  bool is_protected_a_cell(int c) const {
    return is_comp_cell(c) || is_result_cell(c) || is_label_cell(c);
  }

  // --- canonical hierarchy labels --------------------------------------

  // v_L(j): how many times the block index j divides by the base L
  // before leaving the integers; label(0) is pinned to the full depth.
  int canonical_label(int block) const {
    require_block_index(block);
    if (block == 0) return concat_depth;
    int level = 0, j = block;
    while (j % block_len == 0) {
      j /= block_len;
      ++level;
    }
    return std::min(level, concat_depth);
  }

  std::vector<int> canonical_labels() const {
    std::vector<int> out(static_cast<std::size_t>(n_blocks()));
    for (int b = 0; b < n_blocks(); ++b)
      out[static_cast<std::size_t>(b)] = canonical_label(b);
    return out;
  }

  // Blocks still active at hierarchy level i (level 0: everyone).
  std::vector<int> active_blocks(const std::vector<int>& labels,
                                 int level) const {
    if (static_cast<int>(labels.size()) != n_blocks())
      throw LengthMismatch("label list size != block count");
    std::vector<int> out;
    for (int b = 0; b < n_blocks(); ++b)
      if (labels[static_cast<std::size_t>(b)] >= level) out.push_back(b);
    return out;
  }

  std::uint64_t fingerprint() const {
    // FNV-1a over the canonical field string.
    const std::string s = "margins=" + std::to_string(margins) +
                          ";n_comp=" + std::to_string(n_comp) +
                          ";block_len=" + std::to_string(block_len) +
                          ";concat_depth=" + std::to_string(concat_depth);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  nlohmann::json to_json() const {
    return {{"margins", margins},
            {"n_comp", n_comp},
            {"block_len", block_len},
            {"concat_depth", concat_depth},
            {"n", n()},
            {"fingerprint", fingerprint()}};
  }

  static Layout from_json(const nlohmann::json& j) {
    Layout l(j.at("margins").get<int>(), j.at("n_comp").get<int>(),
             j.value("block_len", 0), j.value("concat_depth", 0));
    if (j.contains("n") && j.at("n").get<int>() != l.n())
      throw LengthMismatch("layout n field disagrees with geometry");
    if (j.contains("fingerprint") &&
        j.at("fingerprint").get<std::uint64_t>() != l.fingerprint())
      throw FingerprintMismatch("layout fingerprint disagrees with fields");
    return l;
  }

 private:
  void require_comp_index(int q) const {
    if (q < 0 || q >= n_comp)
      throw BadConfig("computational index out of range");
  }
  void require_block_index(int b) const {
    if (block_len == 0) throw BadConfig("layout has no station blocks");
    if (b < 0 || b >= n_blocks()) throw BadConfig("block index out of range");
  }
};

enum class InitPattern { AllZero, SingleCu, ThreeCu, Canonical };

inline InitPattern parse_pattern(const std::string& s) {
  if (s == "all-zero") return InitPattern::AllZero;
  if (s == "single-cu") return InitPattern::SingleCu;
  if (s == "three-cu") return InitPattern::ThreeCu;
  if (s == "canonical") return InitPattern::Canonical;
  throw BadConfig("unknown init pattern: " + s);
}

inline std::string pattern_name(InitPattern p) {
  switch (p) {
    case InitPattern::AllZero: return "all-zero";
    case InitPattern::SingleCu: return "single-cu";
    case InitPattern::ThreeCu: return "three-cu";
    case InitPattern::Canonical: return "canonical";
  }
  return "?";
}

inline ChainState make_initial_state(const Layout& l, InitPattern p) {
  ChainState s(l.n());
  switch (p) {
    case InitPattern::AllZero:
      break;
    case InitPattern::SingleCu:
      s.set_bit(l.cu_home(0), 1);
      break;
    case InitPattern::ThreeCu:
      // Deployment pattern for the redundant-control cycle: units 0, 1, 3.
      if (l.n_comp < 4)
        throw InsufficientLength(
            "three-cu pattern needs at least 4 computational units");
      s.set_bit(l.cu_home(0), 1);
      s.set_bit(l.cu_home(1), 1);
      s.set_bit(l.cu_home(3), 1);
      break;
    case InitPattern::Canonical: {
      if (l.block_len == 0)
        throw BadConfig("canonical pattern needs station blocks");
      const auto labels = l.canonical_labels();
      for (int b = 0; b < l.n_blocks(); ++b) {
        s.set_bit(l.result_cell(b), 1);
        s.set_bit(l.cu_home(b * l.block_len), 1);
        for (int m = 0; m < l.label_width(); ++m)
          s.set_bit(l.label_cell(b, m),
                    (labels[static_cast<std::size_t>(b)] >> m) & 1);
      }
      break;
    }
  }
  return s;
}

inline ChainState make_initial_state(const Layout& l,
                                     const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != l.n())
    throw LengthMismatch("bit pattern length != chain length");
  for (int c = 0; c < l.n(); ++c)
    if (bits[static_cast<std::size_t>(c)] == 1 && l.is_comp_cell(c))
      throw BadConfig("bit pattern writes a computational cell");
  return ChainState::from_bits(bits);
}

}  // namespace globalctl
