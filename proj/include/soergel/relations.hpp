#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "soergel/diagram.hpp"

namespace soergel {

// Parses "[dot_s:1 ; dot_e:1]", "[box:x1] - [box:x2]", "1/2*[cup:1 ; cap:1]"
// or "0". A bare "0" needs the boundary, so it is only accepted through
// parse_relation, which borrows it from the other side.
LinearCombo parse_combo(std::string_view text);

struct Relation {
  std::string name;    // family name, e.g. "doubleDot" or "twistMerge.2"
  std::string colors;  // "i=2", "a=2 b=3 j=5", ...
  std::string lhs_text, rhs_text;
  LinearCombo lhs, rhs;
};

// Builds a relation from combo texts; throws when the sides have different
// boundaries or different degrees.
Relation parse_relation(std::string name, std::string colors, std::string_view lhs, std::string_view rhs);

// Replaces {x}, {x+1}, {x-1}, ... by the integer bound to x, and {name} by
// the string bound to name.
std::string expand_template(std::string_view text, const std::map<std::string, int>& ints,
                            const std::map<std::string, std::string>& strings = {});

struct SkippedFamily {
  std::string name;
  std::string reason;
};

// Every defining relation and the derived identities, instantiated for all
// admissible colors in 1..n. Families with no admissible colors are listed
// in `skipped` when it is given.
std::vector<Relation> builtin_relations(int n, std::vector<SkippedFamily>* skipped = nullptr);

// Closed diagrams and diagrams whose boundary misses a color used inside,
// paired with their color-free value.
std::vector<Relation> color_elimination_checks(int n);

struct VerifyResult {
  bool pass = false;
  std::string diff;  // empty on pass
};
VerifyResult verify(const Relation& r, const Ring& ring, Exec exec = Exec::Serial);

// The same relation with the first right-hand term's sign flipped. When the
// right side is zero the left side is copied over, which only breaks the
// relation if the left side does not vanish.
Relation mutate(const Relation& r);

struct SuiteLine {
  bool pass = false;
  std::string name, colors, detail;
  std::string str() const;  // "PASS <name> <colors>"
};
struct SuiteReport {
  std::vector<SuiteLine> lines;
  std::vector<SkippedFamily> skipped;
  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }
  std::string summary() const;  // "summary: total=... passed=... failed=... skipped_families=..."
  std::string to_json() const;
};

// Relations are independent, so Exec::Parallel checks them concurrently.
SuiteReport verify_all(const std::vector<Relation>& rels, const Ring& ring, Exec exec = Exec::Serial);
// builtin_relations(n) and color_elimination_checks(n) on the ring.
SuiteReport verify_suite(int n, bool quotient, Exec exec = Exec::Serial);

// The two sides of the three-color associativity relation on colors
// i-1, i, i+1, with source (i-1)(i+1)i(i+1)(i-1)i.
Relation triple_overlap(int i);
// The eight bimodule generators of that source used to check it by hand.
std::vector<BSElement> triple_overlap_generators(int i, const Ring& ring);
// Evaluates both sides on the generators and compares with the expected
// images: 1-tensors with x_{i+2}, x_{i-1}, ... in the first or last slot.
SuiteReport verify_triple_overlap_generators(int n, int i);

// Idempotent decompositions, round trips through the auxiliary bimodules and
// biadjunction composites, as exact matrix identities.
struct MatrixIdentity {
  std::string name, colors;
  MorphismMatrix lhs, rhs;
};
std::vector<MatrixIdentity> idempotent_identities(const Ring& ring);
SuiteReport verify_identities(const std::vector<MatrixIdentity>& ids);

// Quotient-mode special cases: x1 = 1/2 double dot at n = 1 and e1 = 0.
std::vector<Relation> quotient_relations(int n);

}  // namespace soergel
