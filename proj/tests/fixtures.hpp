#pragma once

// Hand-worked reference systems, frozen as CSV text. The suites assert
// exact outputs on these.

#include <string>

#include "svis/table.hpp"

namespace fixtures {

inline svis::SetValuedTable parse_csv(const std::string& text) {
    return svis::parse_table(text, svis::TableFormat::Csv);
}

// 6x4 system exercising all three tolerance relation kinds.
inline const char* kTable1 = R"(object,a1,a2,a3,a4
x1,"{0}","{0}","{1,2}","{1,2}"
x2,"{0,1,2}","{1,2}","{1,2}","{0,1,2}"
x3,"{1,2}","{1}","{1}","{1,2}"
x4,"{0,1}","{0,2}","{1,2}","{1,2}"
x5,"{1,2}","{1,2}","{1,2}","{1}"
x6,"{1}","{1}","{0,1}","{0,1}"
)";

// 8x4 system with duplicate rows; compresses to a 4-object image.
inline const char* kTable3 = R"(object,a1,a2,a3,a4
x1,"{0}","{0}","{1,2}","{1,2}"
x2,"{0,1,2}","{0,1,2}","{1,2}","{0,1,2}"
x3,"{1,2}","{0,1}","{1,2}","{1,2}"
x4,"{0,1}","{0,2}","{1,2}","{1}"
x5,"{1,2}","{1,2}","{1,2}","{1}"
x6,"{1}","{1,2}","{0,1}","{0,1}"
x7,"{0}","{0}","{1,2}","{1,2}"
x8,"{1}","{1,2}","{0,1}","{0,1}"
)";

// Extra column a5 appended to the 8x4 system.
inline const char* kColumnA5 = R"(object,a5
x1,"{1,2}"
x2,"{0,2}"
x3,"{1,2}"
x4,"{2}"
x5,"{2}"
x6,"{0,1,2}"
x7,"{0,2}"
x8,"{3}"
)";

// The 8x4 system with a5 added (five columns).
inline const char* kTable6 = R"(object,a1,a2,a3,a4,a5
x1,"{0}","{0}","{1,2}","{1,2}","{1,2}"
x2,"{0,1,2}","{0,1,2}","{1,2}","{0,1,2}","{0,2}"
x3,"{1,2}","{0,1}","{1,2}","{1,2}","{1,2}"
x4,"{0,1}","{0,2}","{1,2}","{1}","{2}"
x5,"{1,2}","{1,2}","{1,2}","{1}","{2}"
x6,"{1}","{1,2}","{0,1}","{0,1}","{0,1,2}"
x7,"{0}","{0}","{1,2}","{1,2}","{0,2}"
x8,"{1}","{1,2}","{0,1}","{0,1}","{3}"
)";

// The 8x4 system with a1 deleted.
inline const char* kTable9 = R"(object,a2,a3,a4
x1,"{0}","{1,2}","{1,2}"
x2,"{0,1,2}","{1,2}","{0,1,2}"
x3,"{0,1}","{1,2}","{1,2}"
x4,"{0,2}","{1,2}","{1}"
x5,"{1,2}","{1,2}","{1}"
x6,"{1,2}","{0,1}","{0,1}"
x7,"{0}","{1,2}","{1,2}"
x8,"{1,2}","{0,1}","{0,1}"
)";

// 6x3 system with pairwise-identical rows; the base for object edits.
inline const char* kTable11 = R"(object,a1,a2,a3
x1,"{0,1}","{0,2}","{1,2}"
x2,"{0,1}","{0,2}","{1,2}"
x3,"{0,1}","{1}","{0,1}"
x4,"{0,1}","{1}","{0,1}"
x5,"{1,2}","{1}","{1,2}"
x6,"{1,2}","{1}","{1,2}"
)";

// Its row-identity quotient.
inline const char* kTable12 = R"(object,a1,a2,a3
y1,"{0,1}","{0,2}","{1,2}"
y2,"{0,1}","{1}","{0,1}"
y3,"{1,2}","{1}","{1,2}"
)";

// Incoming rows.
inline const char* kTable13 = R"(object,a1,a2,a3
x7,"{1,2}","{0,2}","{0,1}"
x8,"{1,2}","{0,2}","{0,1}"
x9,"{0,1}","{1}","{0,1}"
x10,"{0,1}","{1}","{0,1}"
)";

// Union of the 6x3 system and the incoming rows.
inline const char* kTable14 = R"(object,a1,a2,a3
x1,"{0,1}","{0,2}","{1,2}"
x2,"{0,1}","{0,2}","{1,2}"
x3,"{0,1}","{1}","{0,1}"
x4,"{0,1}","{1}","{0,1}"
x5,"{1,2}","{1}","{1,2}"
x6,"{1,2}","{1}","{1,2}"
x7,"{1,2}","{0,2}","{0,1}"
x8,"{1,2}","{0,2}","{0,1}"
x9,"{0,1}","{1}","{0,1}"
x10,"{0,1}","{1}","{0,1}"
)";

// Quotient of the incoming rows, numbered after the stored quotient.
inline const char* kTable15 = R"(object,a1,a2,a3
y4,"{1,2}","{0,2}","{0,1}"
y5,"{0,1}","{1}","{0,1}"
)";

// Stored quotient + incoming quotient.
inline const char* kTable16 = R"(object,a1,a2,a3
y1,"{0,1}","{0,2}","{1,2}"
y2,"{0,1}","{1}","{0,1}"
y3,"{1,2}","{1}","{1,2}"
y4,"{1,2}","{0,2}","{0,1}"
y5,"{0,1}","{1}","{0,1}"
)";

// Final quotient of the union.
inline const char* kTable17 = R"(object,a1,a2,a3
y1,"{0,1}","{0,2}","{1,2}"
y2,"{0,1}","{1}","{0,1}"
y3,"{1,2}","{1}","{1,2}"
y4,"{1,2}","{0,2}","{0,1}"
)";

// Rows removed by the deletion scenario.
inline const char* kTable18 = R"(object,a1,a2,a3
x1,"{0,1}","{0,2}","{1,2}"
x2,"{0,1}","{0,2}","{1,2}"
x3,"{0,1}","{1}","{0,1}"
)";

// What remains of the union after deleting x1..x3.
inline const char* kTable19 = R"(object,a1,a2,a3
x4,"{0,1}","{1}","{0,1}"
x5,"{1,2}","{1}","{1,2}"
x6,"{1,2}","{1}","{1,2}"
x7,"{1,2}","{0,2}","{0,1}"
x8,"{1,2}","{0,2}","{0,1}"
x9,"{0,1}","{1}","{0,1}"
x10,"{0,1}","{1}","{0,1}"
)";

// Quotient after the deletion (z2..z4 in the source).
inline const char* kTable20 = R"(object,a1,a2,a3
y1,"{0,1}","{1}","{0,1}"
y2,"{1,2}","{1}","{1,2}"
y3,"{1,2}","{0,2}","{0,1}"
)";

inline svis::SetValuedTable table1() { return parse_csv(kTable1); }
inline svis::SetValuedTable table3() { return parse_csv(kTable3); }
inline svis::SetValuedTable column_a5() { return parse_csv(kColumnA5); }
inline svis::SetValuedTable table6() { return parse_csv(kTable6); }
inline svis::SetValuedTable table9() { return parse_csv(kTable9); }
inline svis::SetValuedTable table11() { return parse_csv(kTable11); }
inline svis::SetValuedTable table12() { return parse_csv(kTable12); }
inline svis::SetValuedTable table13() { return parse_csv(kTable13); }
inline svis::SetValuedTable table14() { return parse_csv(kTable14); }
inline svis::SetValuedTable table15() { return parse_csv(kTable15); }
inline svis::SetValuedTable table16() { return parse_csv(kTable16); }
inline svis::SetValuedTable table17() { return parse_csv(kTable17); }
inline svis::SetValuedTable table18() { return parse_csv(kTable18); }
inline svis::SetValuedTable table19() { return parse_csv(kTable19); }
inline svis::SetValuedTable table20() { return parse_csv(kTable20); }

}  // namespace fixtures
