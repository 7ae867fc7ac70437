#include "afterimage_cli/server.hpp"

#include <cstdio>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include <afterimage/bundle.hpp>
#include <afterimage/errors.hpp>

namespace afterimage::cli {
namespace {

namespace fs = std::filesystem;

void check_logs_writable(const fs::path& logs) {
  std::error_code ec;
  fs::create_directories(logs, ec);
  if (ec) throw IoError("cannot create " + logs.string() + ": " + ec.message());
  const fs::path probe = logs / ".write-probe";
  std::FILE* f = std::fopen(probe.c_str(), "w");
  if (!f) throw IoError("logs directory " + logs.string() + " is not writable");
  std::fclose(f);
  fs::remove(probe, ec);
}

nlohmann::json bundle_listing(const fs::path& root) {
  std::vector<std::string> dirs;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(root, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_directory() && it->path().filename() == "logs" && it.depth() == 0) {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file() && it->path().filename() == kManifestName) {
      dirs.push_back(fs::relative(it->path().parent_path(), root).generic_string());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return nlohmann::json{{"bundles", dirs}};
}

}  // namespace

BundleServer::BundleServer(fs::path root) : root_(std::move(root)), server_(std::make_unique<httplib::Server>()) {
  if (!fs::is_directory(root_)) throw IoError(root_.string() + " is not a directory");
  check_logs_writable(root_ / "logs");

  server_->set_file_extension_and_mimetype_mapping("pgm", "image/x-portable-graymap");
  server_->set_file_extension_and_mimetype_mapping("json", "application/json");
  server_->set_file_extension_and_mimetype_mapping("png", "image/png");
  if (!server_->set_mount_point("/", root_.string())) {
    throw IoError("cannot serve " + root_.string());
  }

  server_->Get("/bundles.json", [root = root_](const httplib::Request&, httplib::Response& res) {
    res.set_content(bundle_listing(root).dump(2) + "\n", "application/json");
  });

  const fs::path logs = root_ / "logs";
  server_->Post(R"(/logs/([A-Za-z0-9_][A-Za-z0-9._-]*\.json))",
                [logs](const httplib::Request& req, httplib::Response& res) {
                  if (!nlohmann::json::accept(req.body)) {
                    res.status = 400;
                    res.set_content("{\"error\":\"body is not JSON\"}\n", "application/json");
                    return;
                  }
                  const std::string name = req.matches[1];
                  const fs::path target = logs / name;
                  // "x" mode creates exclusively, so concurrent posts never overwrite.
                  std::FILE* f = std::fopen(target.c_str(), "wbx");
                  if (!f) {
                    const bool exists = fs::exists(target);
                    res.status = exists ? 409 : 500;
                    res.set_content(exists ? "{\"error\":\"session log exists\"}\n"
                                           : "{\"error\":\"cannot write log\"}\n",
                                    "application/json");
                    return;
                  }
                  const bool ok = std::fwrite(req.body.data(), 1, req.body.size(), f) == req.body.size();
                  if (std::fclose(f) != 0 || !ok) {
                    res.status = 500;
                    res.set_content("{\"error\":\"cannot write log\"}\n", "application/json");
                    return;
                  }
                  res.status = 201;
                  res.set_content(nlohmann::json{{"stored", "logs/" + name}}.dump() + "\n",
                                  "application/json");
                });
  server_->Post(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 400;
    res.set_content("{\"error\":\"only /logs/<session>.json accepts POST\"}\n", "application/json");
  });
}

BundleServer::~BundleServer() { stop(); }

int BundleServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw IoError("cannot listen on " + host + ":" + std::to_string(port) + " (port busy?)");
  return bound;
}

void BundleServer::listen() { server_->listen_after_bind(); }

void BundleServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void BundleServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace afterimage::cli
