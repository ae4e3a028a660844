#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "iosc/modeval.hpp"
#include "iosc/poly.hpp"

namespace iosc {

enum class BlockMode {
  Full,            ///< no constraint
  PrimitiveBlock,  ///< the block tuple is not 0 mod p
  ZeroModP,        ///< every coordinate is 0 mod p
  UnitModP,        ///< every coordinate is a unit mod p
  ReductionIn,     ///< the reduction mod p satisfies the block's equations
};

std::string to_string(BlockMode mode);
BlockMode parse_block_mode(const std::string& text);

/// A contiguous coordinate range [begin, end) with a constraint. For
/// ReductionIn the equations use the block's own variables (end - begin).
struct RegionBlock {
  std::size_t begin = 0;
  std::size_t end = 0;
  BlockMode mode = BlockMode::Full;
  std::vector<Poly> equations;
};

/// Product-form subset of (Z/p^m)^k. Every constraint only looks at the
/// reduction mod p, so membership is decided by the residues mod p.
class Region {
 public:
  Region() = default;
  Region(std::size_t dim, std::vector<RegionBlock> blocks);
  static Region full(std::size_t dim);
  /// One block of the given mode covering all coordinates.
  static Region uniform(std::size_t dim, BlockMode mode, std::vector<Poly> equations = {});
  /// Concatenate two regions over disjoint coordinate sets.
  static Region product(const Region& a, const Region& b);

  std::size_t dim() const { return dim_; }
  const std::vector<RegionBlock>& blocks() const { return blocks_; }
  bool is_full() const;

  /// Prepare modular evaluators for the ReductionIn blocks at prime p.
  class Checker {
   public:
    bool contains(std::span<const std::uint64_t> x) const;

   private:
    friend class Region;
    std::uint64_t p_ = 2;
    const Region* region_ = nullptr;
    std::vector<std::vector<ModPoly>> equations_;
  };
  Checker checker(std::uint64_t p) const;

  /// Number of points of the region in (Z/p)^k.
  Integer count_mod_p(std::uint64_t p) const;

 private:
  std::size_t dim_ = 0;
  std::vector<RegionBlock> blocks_;
};

}  // namespace iosc
