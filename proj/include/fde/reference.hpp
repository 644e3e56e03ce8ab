#pragma once

// Published convergence tables, transcribed cell by cell. Ids Tab1..Tab14
// number the tables in order of appearance; TabExam* and the *a tables hold
// the remaining runs (n = 10, 100, ... ladders).

#include "fde/error.hpp"
#include "fde/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fde {

struct RefRow {
  int n;
  std::optional<int> K;
  double E;
  std::optional<double> order;
};

struct ReferenceTable {
  std::string id;
  std::string problem;
  Level level;
  std::string caption;
  double order_tolerance;
  std::vector<RefRow> rows;

  std::vector<int> ladder() const {
    std::vector<int> out;
    for (const auto& r : rows) out.push_back(r.n);
    return out;
  }
};

inline const std::vector<ReferenceTable>& reference_tables() {
  using std::nullopt;
  static const std::vector<ReferenceTable> tables = {
      {"Tab1", "ex4_1", Level::P2, "p4 on ex4_1", 0.05,
       {{8, 16, 3.5273e-06, nullopt},
        {16, 16, 2.2041e-07, 4.0003},
        {32, 16, 1.3775e-08, 4.0001},
        {64, 17, 8.6093e-10, 4.0000},
        {128, 17, 5.3808e-11, 4.0000},
        {256, 17, 3.3631e-12, 4.0000},
        {512, 17, 2.1050e-13, 3.9979}}},
      {"Tab2", "ex4_1", Level::P3, "p6 on ex4_1", 0.05,
       {{10, 16, 6.1215e-09, nullopt},
        {20, 16, 1.5168e-10, nullopt},
        {40, 18, 1.2227e-11, nullopt},
        {80, 17, 8.1268e-13, nullopt},
        {100, 16, 3.3529e-13, nullopt},
        {200, 17, 2.1760e-14, nullopt}}},
      {"Tab3", "ex4_2", Level::P2, "p4 on ex4_2", 0.05,
       {{8, 16, 9.6622e-05, nullopt},
        {16, 16, 6.1678e-06, 3.9695},
        {32, 16, 3.8756e-07, 3.9923},
        {64, 18, 2.4255e-08, 3.9981},
        {128, 17, 1.5165e-09, 3.9995},
        {256, 17, 9.4787e-11, 3.9999},
        {512, 18, 5.9244e-12, 3.9999}}},
      {"Tab4", "ex4_2", Level::P3, "p6 on ex4_2", 0.05,
       {{10, 16, 5.2823e-06, nullopt},
        {20, 16, 1.1847e-07, nullopt},
        {40, 16, 2.2197e-09, nullopt},
        {80, 16, 3.5748e-11, nullopt},
        {100, 16, 9.0258e-12, nullopt},
        {200, 17, 7.4163e-14, nullopt}}},
      {"Tab5", "ex4_3", Level::P2, "p4 on ex4_3", 0.05,
       {{8, 8, 3.7008e-06, nullopt},
        {16, 8, 2.3135e-07, 3.9997},
        {32, 9, 1.4461e-08, 3.9999},
        {64, 8, 9.0379e-10, 4.0000},
        {128, 9, 5.6488e-11, 4.0000},
        {256, 9, 3.5305e-12, 4.0000},
        {512, 9, 2.2071e-13, 3.9996},
        {1024, 9, 1.4211e-14, 3.9571}}},
      {"Tab6", "ex4_3", Level::P3, "p6 on ex4_3", 0.05,
       {{10, 5, 6.9414e-09, nullopt},
        {20, 5, 6.8387e-11, nullopt},
        {40, 4, 6.3052e-12, nullopt},
        {80, 4, 4.3388e-13, nullopt},
        {100, 4, 1.7941e-13, nullopt},
        {200, 4, 1.1990e-14, nullopt},
        {300, 3, 8.8818e-16, nullopt}}},
      {"Tab7", "ex5_1", Level::P2, "p4 on ex5_1", 0.05,
       {{8, 9, 4.5470e-07, nullopt},
        {16, 9, 2.8458e-08, 3.9980},
        {32, 10, 1.7940e-09, 3.9876},
        {64, 9, 1.1213e-10, 3.9999},
        {128, 9, 7.0077e-12, 4.0001},
        {256, 9, 4.3743e-13, 4.0018}}},
      {"Tab8", "ex5_1", Level::P3, "p6 on ex5_1", 0.1,
       {{8, 7, 1.7910e-09, nullopt},
        {16, 7, 2.8827e-11, 5.9572},
        {32, 8, 3.1861e-13, 6.4995},
        {64, 8, 2.5591e-14, 3.6381},
        {128, 8, 1.8874e-15, 3.7612}}},
      {"Tab9", "ex5_2", Level::P2, "p4 on ex5_2", 0.05,
       {{8, 7, 8.5791e-07, nullopt},
        {16, 8, 5.4197e-08, 3.9845},
        {32, 8, 3.4052e-09, 3.9924},
        {64, 8, 2.1285e-10, 3.9998},
        {128, 8, 1.3310e-11, 3.9993}}},
      {"Tab10", "ex5_2", Level::P3, "p6 on ex5_2", 0.1,
       {{8, 9, 6.7167e-10, nullopt},
        {16, 9, 9.6914e-12, 6.1149},
        {32, 9, 2.6068e-13, 5.2163},
        {64, 9, 2.1094e-14, 3.6274},
        {128, 9, 1.9984e-15, 3.3999}}},
      {"Tab11", "ex7_1", Level::P3, "p6 on ex7_1", 0.1,
       {{8, 6, 4.5770e-10, nullopt},
        {16, 6, 7.1845e-12, 5.9934},
        {32, 6, 1.1169e-13, 6.0073},
        {64, 6, 1.7764e-15, 5.9744}}},
      {"Tab12", "ex7_2", Level::P3, "p6 on ex7_2", 0.1,
       {{8, 2, 7.1262e-13, nullopt},
        {16, 2, 7.1748e-15, 6.6341},
        {32, 2, 1.2490e-16, 5.8441},
        {64, 2, 2.7756e-17, 2.1699}}},
      {"Tab13", "ex7_1", Level::P4, "p8 on ex7_1", 0.1,
       {{8, 6, 1.4213e-11, nullopt},
        {16, 6, 5.9064e-14, 7.9107},
        {32, 6, 8.8818e-16, 6.0553},
        {64, 6, 8.8818e-16, 0.0}}},
      {"Tab14", "ex7_2", Level::P4, "p8 on ex7_2", 0.1,
       {{8, 2, 7.0173e-13, nullopt},
        {16, 2, 7.1887e-15, 6.6090},
        {32, 2, 1.2490e-16, 5.8469},
        {64, 2, 2.7756e-17, 2.1699}}},
      {"TabExam5", "ex4_4", Level::P3, "p6 on ex4_4", 0.3,
       {{8, 12, 5.1727e-07, nullopt},
        {16, 12, 1.6924e-08, 4.9338},
        {64, 12, 1.7049e-11, 4.9855},
        {128, 13, 5.4001e-13, 4.9806}}},
      {"TabExam5a", "ex4_4", Level::P3, "p6 on ex4_4, n = 10..1000", 0.3,
       {{10, nullopt, 1.7274e-07, nullopt},
        {100, nullopt, 1.8372e-12, nullopt},
        {800, nullopt, 6.6613e-16, nullopt},
        {1000, nullopt, 4.4409e-16, nullopt}}},
      {"TabExam6", "ex4_5", Level::P3, "p6 on ex4_5", 0.3,
       {{8, 13, 2.0640e-06, nullopt},
        {16, 13, 5.1231e-08, 5.3323},
        {32, 13, 9.7636e-10, 5.7135},
        {64, 14, 1.6980e-11, 5.8455}}},
      {"TabExam6a", "ex4_5", Level::P3, "p6 on ex4_5, n = 10..1000", 0.3,
       {{10, nullopt, 6.5312e-07, nullopt},
        {100, nullopt, 3.4605e-12, nullopt},
        {400, nullopt, 1.5432e-14, nullopt},
        {1000, nullopt, 5.5511e-16, nullopt}}},
      {"TabExam7", "ex4_6", Level::P3, "p6 on ex4_6", 0.3,
       {{8, 10, 3.0241e-08, nullopt},
        {16, 11, 1.2083e-09, 4.6454},
        {32, 11, 4.1760e-11, 4.8547},
        {64, 11, 1.3666e-12, 4.9334}}},
      {"TabExam7a", "ex4_6", Level::P3, "p6 on ex4_6, n = 10..1000", 0.3,
       {{10, nullopt, 1.1025e-08, nullopt},
        {100, nullopt, 1.7941e-13, nullopt},
        {500, nullopt, 3.3307e-16, nullopt},
        {1000, nullopt, 2.2204e-16, nullopt}}},
      {"Tab3a", "ex4_2", Level::P2, "p4 on ex4_2, n = 10, 100, 1000", 0.05,
       {{10, 16, 3.9977e-05, nullopt}, {100, 17, 4.0704e-09, nullopt}, {1000, 18, 4.0723e-13, nullopt}}},
      {"Tab5a", "ex4_3", Level::P2, "p4 on ex4_3, n = 10, 100, 1000", 0.05,
       {{10, 8, 1.5160e-06, nullopt}, {100, 8, 1.5163e-10, nullopt}, {1000, 9, 1.5099e-14, nullopt}}},
      {"Tab7a", "ex5_1", Level::P2, "p4 on ex5_1, n = 10, 100, 1000", 0.05,
       {{10, nullopt, 1.8709e-07, nullopt}, {100, nullopt, 1.8813e-11, nullopt}, {1000, nullopt, 1.7764e-15, nullopt}}},
      {"Tab9a", "ex5_2", Level::P2, "p4 on ex5_2, n = 10, 100, 1000", 0.05,
       {{10, nullopt, 3.5625e-07, nullopt}, {100, nullopt, 3.5727e-11, nullopt}, {1000, nullopt, 3.6082e-15, nullopt}}},
  };
  return tables;
}

// Alternative names for some tables.
inline std::string_view canonical_table_id(std::string_view id) {
  struct Alias {
    std::string_view from, to;
  };
  static constexpr Alias aliases[] = {{"Tab1.O4", "Tab7"},    {"Tab2.O4", "Tab8"},    {"Tab1.O4a", "Tab9"},
                                      {"Tab3.O4a", "Tab10"},  {"Tab1.FDE5", "Tab11"}, {"Tab2.FDE5", "Tab12"},
                                      {"Tab3.FDE5", "Tab13"}, {"Tab4.FDE5", "Tab14"}};
  for (const auto& a : aliases)
    if (a.from == id) return a.to;
  return id;
}

inline const ReferenceTable& reference_table(std::string_view id) {
  const auto key = canonical_table_id(id);
  for (const auto& t : reference_tables())
    if (t.id == key) return t;
  throw Error(Errc::UnknownTable, "no reference table '" + std::string(id) + "'");
}

}  // namespace fde
