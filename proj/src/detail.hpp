#pragma once

#include <map>
#include <string>
#include <vector>

#include "hdx/instance.hpp"

namespace hdx::detail {

std::string join_failures(const std::vector<std::string>& items, std::size_t limit = 5);
std::string format_face(const PureComplex& x, const Face& f);

std::map<IndexSet, MatrixGroup> local_groups(const Instance& inst, const KmsMap& phi, std::uint64_t budget);
void base_fields(const Instance& inst, Certificate& c);
void subgroup_checks(const Instance& inst, const KmsMap& phi, const std::map<IndexSet, MatrixGroup>& local,
                     Certificate& c);
std::vector<CotypeLink> representative_links(const Instance& inst, const std::map<IndexSet, MatrixGroup>* local,
                                             const KmsMap* phi, double gamma, double tol);
void link_clause(Certificate& c);
// Checks that only need the complex: partiteness, link connectivity, vertex
// degrees, link spectra and regularity, balanced weights.
void complex_checks(const Instance& inst, const PureComplex& X, Certificate& c);

}  // namespace hdx::detail
