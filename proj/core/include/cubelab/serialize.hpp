#pragma once

#include <string>

#include "cubelab/covering.hpp"
#include "cubelab/dist_certificate.hpp"
#include "cubelab/product_certificate.hpp"
#include "cubelab/tower.hpp"
#include "cubelab/verify.hpp"

namespace cubelab {

// JSON round-trips for the domain types. Subsets travel as little-endian
// hex bit-vectors wrapped with their width and cardinality; every rational
// is a "p/q" string and every dyadic a {num, log2_den} pair, so nothing in
// these files is a float. All emitters produce canonical (sorted-key)
// JSON.

std::string subset_to_json(const DenseSubset& s);
DenseSubset subset_from_json(const std::string& text);

std::string partition_to_json(const Partition& p);
Partition partition_from_json(const std::string& text);

std::string distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const std::string& text);

std::string tower_to_json(const BlockTower& t);
BlockTower tower_from_json(const std::string& text);

std::string cylinder_to_json(const CylinderUnion& u);
CylinderUnion cylinder_from_json(const std::string& text);

std::string intersection_report_to_json(const IntersectionReport& r);
std::string even_split_report_to_json(const EvenSplitReport& r,
                                      bool include_good_shifts = true);
std::string dist_certificate_to_json(const DistributionCertificate& c);
std::string product_certificate_to_json(const ProductCertificate& c);
std::string covering_witness_to_json(const CoveringWitness& w);

/// The subset of a product certificate a later verify run needs.
struct ProductCertificateSummary {
  size_t first_block = 0;
  size_t last_block = 0;
  DenseSubset T;
  mpq_class max_bound;
};
ProductCertificateSummary product_certificate_summary_from_json(
    const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cubelab
