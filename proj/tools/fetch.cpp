#include "commands.hpp"

#include <filesystem>
#include <fstream>

// httplib drags in resolv.h whose _res macro clashes with Eigen's internal
// kernels; keep it after every Eigen-bearing header.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace ordsparse::cli {

bool fetch_laozone(const std::string& out_path, std::string* error) {
  httplib::SSLClient client("hastie.su.domains");
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  const httplib::Result res =
      client.Get("/ElemStatLearn/datasets/LAozone.data");
  if (!res) {
    if (error) *error = "transfer failed: " + httplib::to_string(res.error());
    return false;
  }
  if (res->status != 200) {
    if (error) *error = "server returned status " + std::to_string(res->status);
    return false;
  }

  const std::filesystem::path p(out_path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    if (error) *error = "cannot write " + out_path;
    return false;
  }
  out << res->body;
  return true;
}

}  // namespace ordsparse::cli
