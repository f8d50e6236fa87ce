#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wkc/perm.hpp"
#include "wkc/presentation.hpp"

namespace wkc {

enum class Strategy { automatic, felsch, hlt };

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct EnumerationOptions {
  std::size_t max_cosets = std::size_t{1} << 21;
  Strategy strategy = Strategy::automatic;
};

enum class EnumStatus { closed, overflowed };

/// Coset table. Each generator owns one column, plus a second column for its
/// inverse unless a relator g^2 makes it an involution. Cosets are numbered
/// from 0 (the subgroup itself) in breadth-first order once closed.
class CosetTable {
 public:
  static constexpr std::uint32_t kUndefined = UINT32_MAX;

  EnumStatus status() const { return status_; }
  bool closed() const { return status_ == EnumStatus::closed; }
  Strategy strategy() const { return strategy_; }
  /// Live coset count (the index when closed).
  std::size_t size() const { return size_; }
  std::size_t generator_count() const { return gen_col_.size(); }
  std::size_t column_count() const { return columns_; }
  /// Largest number of coset rows in use at any point of the run.
  std::size_t peak() const { return peak_; }
  std::size_t defined_total() const { return defined_total_; }

  std::uint32_t column(std::uint32_t gen, bool inverse) const {
    return inverse ? inv_col_[gen] : gen_col_[gen];
  }
  std::uint32_t at(std::uint32_t coset, std::uint32_t col) const {
    return rows_[static_cast<std::size_t>(coset) * columns_ + col];
  }
  /// Coset reached from `coset` by reading `w`; kUndefined if a gap is hit.
  std::uint32_t trace(std::uint32_t coset, const GroupWord& w) const;
  bool is_involution(std::uint32_t gen) const { return gen_col_[gen] == inv_col_[gen]; }

  /// "coset,column,target" lines for debugging.
  std::string to_csv() const;

 private:
  friend class Enumerator;
  EnumStatus status_ = EnumStatus::overflowed;
  Strategy strategy_ = Strategy::felsch;
  std::size_t size_ = 0;
  std::size_t columns_ = 0;
  std::size_t peak_ = 0;
  std::size_t defined_total_ = 0;
  std::vector<std::uint32_t> gen_col_;
  std::vector<std::uint32_t> inv_col_;
  std::vector<std::uint32_t> rows_;
};

/// Todd-Coxeter enumeration of the cosets of <subgroup> in the presented
/// group. Overflow is reported through the status, never as an index.
CosetTable todd_coxeter(const Presentation& p, const std::vector<GroupWord>& subgroup = {},
                        const EnumerationOptions& options = {});

/// Right action of each generator on the cosets. When `regular` is set the
/// caller asserts the subgroup was trivial, so the image acts semiregularly.
PermutationGroup perm_image(const CosetTable& t, bool regular = false);

}  // namespace wkc
