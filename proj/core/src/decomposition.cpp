#include "vpart/decomposition.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace vpart {
namespace {

Decomposition empty_for(const TransportInstance& inst, int num_blocks,
                        DecompositionKind kind) {
  Decomposition dec;
  dec.kind = kind;
  dec.blocks.resize(num_blocks);
  dec.block_of.assign(inst.num_demands(), -1);
  dec.classes.assign(inst.num_supplies(), SupplierClass::kUnused);
  dec.interior_block.assign(inst.num_supplies(), -1);
  dec.dual_index.assign(inst.num_supplies(), -1);
  return dec;
}

void index_dualized(Decomposition& dec) {
  for (std::size_t k = 0; k < dec.dualized.size(); ++k) {
    dec.dual_index[dec.dualized[k]] = static_cast<int>(k);
  }
}

}  // namespace

Decomposition classify_suppliers(const TransportInstance& inst,
                                 const Partition& partition) {
  if (partition.num_nodes() != inst.num_demands()) {
    throw std::invalid_argument("partition covers " +
                                std::to_string(partition.num_nodes()) +
                                " demand locations, instance has " +
                                std::to_string(inst.num_demands()));
  }
  Decomposition dec =
      empty_for(inst, partition.num_communities(), DecompositionKind::kBlock);
  for (int b = 0; b < partition.num_communities(); ++b) {
    const auto members = partition.members(b);
    dec.blocks[b].demands.assign(members.begin(), members.end());
    for (int i : members) dec.block_of[i] = b;
  }

  std::vector<int> touched;
  for (int j = 0; j < inst.num_supplies(); ++j) {
    if (inst.is_dummy(j)) {
      dec.classes[j] = SupplierClass::kDummy;
      continue;
    }
    touched.clear();
    for (const ServedDemand& sd : inst.served_by(j)) {
      touched.push_back(dec.block_of[sd.demand]);
    }
    if (touched.empty()) continue;
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int b : touched) dec.blocks[b].suppliers.push_back(j);
    if (touched.size() == 1) {
      dec.classes[j] = SupplierClass::kInterior;
      dec.interior_block[j] = touched.front();
      dec.blocks[touched.front()].interior.push_back(j);
      dec.interior.push_back(j);
    } else {
      dec.classes[j] = SupplierClass::kBoundary;
      for (int b : touched) dec.blocks[b].boundary.push_back(j);
      dec.dualized.push_back(j);
    }
  }
  index_dualized(dec);
  return dec;
}

Decomposition baseline_decomposition(const TransportInstance& inst, bool smart) {
  if (smart) {
    return classify_suppliers(inst, Partition::singletons(inst.num_demands()));
  }
  Decomposition dec =
      empty_for(inst, inst.num_demands(), DecompositionKind::kBaseline);
  for (int i = 0; i < inst.num_demands(); ++i) {
    Block& block = dec.blocks[i];
    block.demands = {i};
    dec.block_of[i] = i;
    for (const AccessArc& a : inst.access(i)) {
      if (inst.is_dummy(a.supplier)) continue;
      block.suppliers.push_back(a.supplier);
      block.boundary.push_back(a.supplier);
    }
  }
  for (int j = 0; j < inst.num_supplies(); ++j) {
    if (inst.is_dummy(j)) {
      dec.classes[j] = SupplierClass::kDummy;
    } else if (!inst.served_by(j).empty()) {
      dec.classes[j] = SupplierClass::kBoundary;
      dec.dualized.push_back(j);
    }
  }
  index_dualized(dec);
  return dec;
}

int dualized_count(const Decomposition& dec) { return dec.num_dualized(); }

void write_decomposition_csv(std::ostream& out, const Decomposition& dec) {
  out << "supplier_id,class,block\n";
  for (std::size_t j = 0; j < dec.classes.size(); ++j) {
    switch (dec.classes[j]) {
      case SupplierClass::kInterior:
        out << j << ",interior," << dec.interior_block[j] << '\n';
        break;
      case SupplierClass::kBoundary:
        out << j << ",boundary,-\n";
        break;
      case SupplierClass::kUnused:
      case SupplierClass::kDummy:
        break;
    }
  }
}

}  // namespace vpart
