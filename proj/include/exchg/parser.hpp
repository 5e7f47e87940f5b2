#ifndef EXCHG_PARSER_HPP_
#define EXCHG_PARSER_HPP_

#include <cstddef>
#include <string>
#include <variant>

#include "exchg/structures.hpp"

namespace exchg {

// Parse failure with the byte offset of the offending token and a rendered
// expected-token set in what().
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error("parse", what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// IS := id | powerset | subsets(k) | subsets_le(k) | tuples(k) | dtuples(k)
//     | dtuples_star | pair(k) | product(IS,IS) | coproduct(IS,IS)
//     | compose(IS,IS)
IndexingSystem parse_indexing(const std::string& text);

// DS := array({syms},IS) | setsystem | graph1 | graph2 | graph3 | binrel
//     | total | product(DS,DS) | coproduct(DS,DS) | composeI(DS,IS)
//     | sub(DS,name) | env(DS,k) | sep_c1(DS,k) | sep_c2(DS,k)
DataStructure parse_structure(const std::string& text);

// Dispatches on the leading constructor; product/coproduct resolve by
// attempting the structure reading first.
std::variant<DataStructure, IndexingSystem> parse_expression(
    const std::string& text);

}  // namespace exchg

#endif  // EXCHG_PARSER_HPP_
