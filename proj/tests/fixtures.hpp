#pragma once

// In-memory copies of the snapshot fixtures under tests/fixtures/, for test
// binaries that should not depend on file paths.

#include <string_view>

namespace testsupport {

// Three students (one without an address), two courses referencing two
// faculties. Students deliberately have no "name" child, so "name" inside a
// student scope falls through to outer frames.
inline constexpr std::string_view kUniversitySnapshot =
    "ODRALITE 1\n"
    "OBJ 1 - Student CPLX\n"
    "OBJ 2 1 fName STR \"Ali\"\n"
    "OBJ 3 1 marks INT 150\n"
    "OBJ 4 1 learns REF 19\n"
    "OBJ 5 1 address CPLX\n"
    "OBJ 6 5 city STR \"Jeddah\"\n"
    "OBJ 7 5 street STR \"King Rd\"\n"
    "OBJ 8 - Student CPLX\n"
    "OBJ 9 8 fName STR \"Sara\"\n"
    "OBJ 10 8 marks INT 250\n"
    "OBJ 11 8 learns REF 22\n"
    "OBJ 12 8 address CPLX\n"
    "OBJ 13 12 city STR \"Rabigh\"\n"
    "OBJ 14 12 street STR \"Campus Ave\"\n"
    "OBJ 15 - Student CPLX\n"
    "OBJ 16 15 fName STR \"Omar\"\n"
    "OBJ 17 15 marks INT 300\n"
    "OBJ 18 15 learns REF 19\n"
    "OBJ 19 - course CPLX\n"
    "OBJ 20 19 name STR \"Databases\"\n"
    "OBJ 21 19 faculty REF 25\n"
    "OBJ 22 - course CPLX\n"
    "OBJ 23 22 name STR \"Algorithms\"\n"
    "OBJ 24 22 faculty REF 27\n"
    "OBJ 25 - Faculty CPLX\n"
    "OBJ 26 25 name STR \"Computing\"\n"
    "OBJ 27 - Faculty CPLX\n"
    "OBJ 28 27 name STR \"Science\"\n";

// Students carry a "codes" set, courses a "prereq" set; exactly three
// student/course pairs share equal sets.
inline constexpr std::string_view kEquijoinSnapshot =
    "ODRALITE 1\n"
    "OBJ 1 - Student CPLX\n"
    "OBJ 2 1 fName STR \"Ali\"\n"
    "OBJ 3 1 codes SET 2 i:101 i:102\n"
    "OBJ 4 - Student CPLX\n"
    "OBJ 5 4 fName STR \"Sara\"\n"
    "OBJ 6 4 codes SET 1 i:201\n"
    "OBJ 7 - Student CPLX\n"
    "OBJ 8 7 fName STR \"Omar\"\n"
    "OBJ 9 7 codes SET 2 i:102 i:101\n"
    "OBJ 10 - Course CPLX\n"
    "OBJ 11 10 name STR \"Databases\"\n"
    "OBJ 12 10 prereq SET 2 i:101 i:102\n"
    "OBJ 13 - Course CPLX\n"
    "OBJ 14 13 name STR \"Algorithms\"\n"
    "OBJ 15 13 prereq SET 1 i:201\n"
    "OBJ 16 - Course CPLX\n"
    "OBJ 17 16 name STR \"Compilers\"\n"
    "OBJ 18 16 prereq SET 1 i:301\n";

}  // namespace testsupport
