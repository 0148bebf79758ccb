#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "coassim/sampler.hpp"
#include "coassim/scenario.hpp"

namespace coassim {

// Field CSVs use columns k,l,iy,ix,... with 1-based k and l and 0-based
// iy, ix; ghost CSVs use k,l,b with b the ring index.

void write_truth_csv(const std::filesystem::path& file, const Grid3D& g,
                     const TruthField& t);
TruthField read_truth_csv(const std::filesystem::path& file, const Grid3D& g);

void write_winds_csv(const std::filesystem::path& file, const Grid3D& g,
                     const WindField& w);
WindField read_winds_csv(const std::filesystem::path& file, const Grid3D& g,
                         int n_steps, double dt);

void write_clouds_csv(const std::filesystem::path& file, const Grid3D& g,
                      const CloudMask& m);
CloudMask read_clouds_csv(const std::filesystem::path& file, const Grid3D& g);

void write_observations_csv(const std::filesystem::path& file, const Grid3D& g,
                            const ObservationSet& obs);
ObservationSet read_observations_csv(const std::filesystem::path& file,
                                     const Grid3D& g);

// k,l,iy,ix,mean,sd rows of the posterior (or any estimated) field.
void write_field_csv(const std::filesystem::path& file, const Grid3D& g,
                     int n_steps, const std::vector<double>& mean,
                     const std::vector<double>& sd);
void read_field_csv(const std::filesystem::path& file, const Grid3D& g,
                    int n_steps, std::vector<double>& mean,
                    std::vector<double>& sd);

void write_param_chains_csv(const std::filesystem::path& file,
                            const ParamChains& chains);

std::uint64_t fnv1a_file(const std::filesystem::path& file);
std::string fnv1a_hex(std::uint64_t h);

}  // namespace coassim
