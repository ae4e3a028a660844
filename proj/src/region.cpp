#include "iosc/region.hpp"

#include <algorithm>

#include "iosc/runtime.hpp"

namespace iosc {

std::string to_string(BlockMode mode) {
  switch (mode) {
    case BlockMode::Full: return "full";
    case BlockMode::PrimitiveBlock: return "primitive";
    case BlockMode::ZeroModP: return "zero";
    case BlockMode::UnitModP: return "unit";
    case BlockMode::ReductionIn: return "reduction";
  }
  return "full";
}

BlockMode parse_block_mode(const std::string& text) {
  if (text == "full") return BlockMode::Full;
  if (text == "primitive") return BlockMode::PrimitiveBlock;
  if (text == "zero") return BlockMode::ZeroModP;
  if (text == "unit") return BlockMode::UnitModP;
  if (text == "reduction") return BlockMode::ReductionIn;
  throw InvalidInput("unknown region mode '" + text + "'");
}

Region::Region(std::size_t dim, std::vector<RegionBlock> blocks) : dim_(dim), blocks_(std::move(blocks)) {
  std::sort(blocks_.begin(), blocks_.end(),
            [](const RegionBlock& a, const RegionBlock& b) { return a.begin < b.begin; });
  std::size_t cursor = 0;
  for (const auto& b : blocks_) {
    if (b.begin != cursor || b.end <= b.begin) throw InvalidInput("region blocks must partition the coordinates");
    if (b.mode == BlockMode::ReductionIn) {
      for (const auto& eq : b.equations) {
        if (eq.nvars() != b.end - b.begin) throw InvalidInput("region equation variable count mismatch");
      }
    }
    cursor = b.end;
  }
  if (cursor != dim) throw InvalidInput("region blocks must partition the coordinates");
}

Region Region::full(std::size_t dim) {
  if (dim == 0) return Region(0, {});
  return Region(dim, {RegionBlock{0, dim, BlockMode::Full, {}}});
}

Region Region::uniform(std::size_t dim, BlockMode mode, std::vector<Poly> equations) {
  return Region(dim, {RegionBlock{0, dim, mode, std::move(equations)}});
}

Region Region::product(const Region& a, const Region& b) {
  std::vector<RegionBlock> blocks = a.blocks_;
  for (auto blk : b.blocks_) {
    blk.begin += a.dim_;
    blk.end += a.dim_;
    blocks.push_back(std::move(blk));
  }
  return Region(a.dim_ + b.dim_, std::move(blocks));
}

bool Region::is_full() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const RegionBlock& b) { return b.mode == BlockMode::Full; });
}

Region::Checker Region::checker(std::uint64_t p) const {
  Checker c;
  c.p_ = p;
  c.region_ = this;
  for (const auto& b : blocks_) {
    std::vector<ModPoly> eqs;
    for (const auto& e : b.equations) eqs.emplace_back(e, p);
    c.equations_.push_back(std::move(eqs));
  }
  return c;
}

bool Region::Checker::contains(std::span<const std::uint64_t> x) const {
  const auto& blocks = region_->blocks_;
  std::uint64_t local[64];
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& b = blocks[bi];
    switch (b.mode) {
      case BlockMode::Full:
        break;
      case BlockMode::PrimitiveBlock: {
        bool any_unit = false;
        for (std::size_t i = b.begin; i < b.end; ++i) any_unit |= (x[i] % p_) != 0;
        if (!any_unit) return false;
        break;
      }
      case BlockMode::ZeroModP:
        for (std::size_t i = b.begin; i < b.end; ++i) {
          if (x[i] % p_ != 0) return false;
        }
        break;
      case BlockMode::UnitModP:
        for (std::size_t i = b.begin; i < b.end; ++i) {
          if (x[i] % p_ == 0) return false;
        }
        break;
      case BlockMode::ReductionIn: {
        const std::size_t k = b.end - b.begin;
        if (k > 64) throw InvalidInput("reduction blocks are limited to 64 coordinates");
        for (std::size_t i = 0; i < k; ++i) local[i] = x[b.begin + i] % p_;
        for (const auto& eq : equations_[bi]) {
          if (eq(std::span<const std::uint64_t>(local, k)) != 0) return false;
        }
        break;
      }
    }
  }
  return true;
}

Integer Region::count_mod_p(std::uint64_t p) const {
  Integer total = 1;
  const Integer P = to_integer(p);
  for (const auto& b : blocks_) {
    const unsigned long k = b.end - b.begin;
    switch (b.mode) {
      case BlockMode::Full: total *= ipow(P, k); break;
      case BlockMode::PrimitiveBlock: total *= ipow(P, k) - 1; break;
      case BlockMode::ZeroModP: break;
      case BlockMode::UnitModP: total *= ipow(P - 1, k); break;
      case BlockMode::ReductionIn: {
        runtime::check_budget(static_cast<long double>(ipow(P, k).get_d()), "region point count");
        std::vector<ModPoly> eqs;
        for (const auto& e : b.equations) eqs.emplace_back(e, p);
        std::vector<std::uint64_t> x(k, 0);
        std::uint64_t count = 0;
        do {
          bool ok = std::all_of(eqs.begin(), eqs.end(), [&](const ModPoly& e) { return e(x) == 0; });
          count += ok;
        } while (next_tuple(x, p));
        total *= to_integer(count);
        break;
      }
    }
  }
  return total;
}

}  // namespace iosc
