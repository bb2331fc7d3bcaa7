#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "vpart/community.hpp"
#include "vpart/instance.hpp"

namespace vpart {

enum class DecompositionKind {
  kBlock,     // dualize only suppliers shared by several blocks
  kBaseline,  // one block per demand, every supply constraint dualized
};

enum class SupplierClass { kUnused, kInterior, kBoundary, kDummy };

struct Block {
  std::vector<int> demands;    // I_b
  std::vector<int> suppliers;  // J_b without the dummy
  std::vector<int> interior;   // J_b^in
  std::vector<int> boundary;   // J_b^out
};

// Block dual decomposition of a transportation instance. All supplier lists
// are ascending. `dualized` is J^out in ascending supplier id and fixes the
// index order of the multiplier vector.
struct Decomposition {
  DecompositionKind kind = DecompositionKind::kBlock;
  std::vector<Block> blocks;
  std::vector<int> block_of;              // b(i) per demand
  std::vector<SupplierClass> classes;     // per supplier id
  std::vector<int> interior_block;        // owning block of interior suppliers, else -1
  std::vector<int> dual_index;            // position in `dualized`, else -1
  std::vector<int> dualized;              // J^out
  std::vector<int> interior;              // J^in, ascending

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int num_dualized() const { return static_cast<int>(dualized.size()); }
};

// Throws std::invalid_argument when the partition does not cover exactly
// the instance's demand locations.
Decomposition classify_suppliers(const TransportInstance& inst,
                                 const Partition& partition);

// One block per demand. With `smart` false every non-dummy supplier that
// serves at least one demand is dualized; with `smart` true the singleton
// partition goes through classify_suppliers instead, so suppliers serving a
// single demand stay inside that demand's block.
Decomposition baseline_decomposition(const TransportInstance& inst,
                                     bool smart = false);

// |J^out|
int dualized_count(const Decomposition& dec);

// CSV: supplier_id,class,block ("-" for boundary); unused suppliers and the
// dummy are omitted.
void write_decomposition_csv(std::ostream& out, const Decomposition& dec);

}  // namespace vpart
