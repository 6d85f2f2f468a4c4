#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "biorth/curvature.hpp"
#include "biorth/forms.hpp"

namespace biorth {

enum class Block { S4, CP2, CP2bar, S2xS2, E8, E8bar };

inline constexpr std::array<Block, 6> kAllBlocks{Block::S4,    Block::CP2, Block::CP2bar,
                                                 Block::S2xS2, Block::E8,  Block::E8bar};

/// Spelling of a block in the word grammar ("S4", "CP2", ..., "-E8").
std::string_view block_name(Block b);

/// Connected sum as a multiset of building blocks. Order carries no meaning.
struct SumWord {
  std::array<std::uint64_t, 6> counts{};

  std::uint64_t& operator[](Block b) { return counts[static_cast<std::size_t>(b)]; }
  std::uint64_t operator[](Block b) const { return counts[static_cast<std::size_t>(b)]; }

  bool empty() const;
  bool has_e8() const { return (*this)[Block::E8] + (*this)[Block::E8bar] > 0; }
  bool operator==(const SumWord&) const = default;
};

/// word := term ("#" term)*, term := (count "*")? block, whitespace ignored.
/// Throws ParseError with the byte offset of the first offending character.
SumWord parse_word(std::string_view text);

/// Canonical spelling: blocks in the order CP2, CP2bar, S2xS2, E8, -E8, S4,
/// zero counts omitted, count 1 written bare; "S4" for the neutral word.
std::string to_string(const SumWord& w);

/// Direct sum of (1) per CP2, (-1) per CP2bar, H per S2xS2, E8 and -E8 per
/// E8 block; S4 adds nothing.
IntersectionForm to_form(const SumWord& w);

struct NormalizeOptions {
  /// Also apply CP2bar # S2xS2 -> CP2 # 2*CP2bar (the orientation-reversed
  /// rewrite). When false only CP2 # S2xS2 -> 2*CP2 # CP2bar is used.
  bool mirrored_rule = true;
};

/// Fixed point of the rewrite system: S4 is neutral, and S2xS2 summands are
/// absorbed into CP2 / CP2bar summands when any are present. Throws
/// PreconditionError on words with E8 blocks.
SumWord normalize(const SumWord& w, NormalizeOptions options = {});

/// S4 alone, only CP2/CP2bar blocks, or only S2xS2 blocks.
bool is_canonical(const SumWord& w);

/// Homeomorphism class named by a canonical word.
HomeoClass word_class(const SumWord& canonical);

/// Smallest canonical word naming a class with a positive-scalar-curvature
/// representative (S4, mixed CP2 sums, S2xS2 sums).
SumWord word_of_class(const HomeoClass& h);

struct OperatorEvidence {
  Model model;
  double min_biorth;
};

struct CitationEvidence {
  std::string key;
  std::string note;
};

struct BlockEvidence {
  Block block;
  std::variant<OperatorEvidence, CitationEvidence> evidence;
};

struct GlueHypothesis {
  std::string name;
  bool verified;
  std::string detail;
};

struct GlueRecord {
  std::string statement;
  std::vector<GlueHypothesis> hypotheses;
};

/// Evidence that every summand carries positive biorthogonal curvature, plus
/// the hypotheses under which the property survives connected sums.
struct Certificate {
  std::vector<BlockEvidence> blocks;
  GlueRecord glue;

  bool valid() const;
};

/// Assembles a certificate for a canonical E8-free word. Every operator value
/// and every glue hypothesis is recomputed here.
Certificate certificate(const SumWord& w, double tol = kConeTolerance);

/// Re-checks the glue hypotheses numerically: the model S3xR operator is
/// inside the cone, and the cone is open, convex and O(4)-invariant at the
/// operators used as evidence.
GlueRecord verify_glue(double tol = kConeTolerance);

} // namespace biorth
