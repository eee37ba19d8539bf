#pragma once

#include <string>
#include <vector>

namespace lrk::tools {

std::vector<std::string> figure_ids();

// Writes fig_<id>.csv and fig_<id>.gp into out_dir; returns both paths.
// An empty L_list selects the figure's default subsystem sizes.
std::vector<std::string> reproduce_figure(const std::string& id, const std::string& out_dir,
                                          const std::vector<int>& L_list = {});

}  // namespace lrk::tools
