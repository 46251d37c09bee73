#include "pathsdd/compiler.hpp"

namespace pathsdd::serial {

CompileTable build_table(const Dag& d, const EdgeOrdering& ord) {
  CompileTable table(d.vertex_count(), ord.size(), d.source());
  Circuit& arena = table.circuit();
  for (Position i = 1; i <= ord.size(); ++i) {
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
      NodeSpec spec = template_node(v, i, d, ord, table);
      if (spec.kind == NodeSpec::Kind::Decision) {
        table.set_cell(v, i, arena.add_decision(spec.level, spec.high, spec.low));
      } else {
        table.set_cell(v, i, spec.kind == NodeSpec::Kind::True ? kTrue : kFalse);
      }
    }
  }
  return table;
}

}  // namespace pathsdd::serial
