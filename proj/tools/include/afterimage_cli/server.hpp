#pragma once

#include <filesystem>
#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace afterimage::cli {

/// Read-only static server over a bundle directory. GET serves files with
/// their content types (404 when absent or outside the root); the only write
/// is POST /logs/<session>.json, which stores a JSON document under
/// <root>/logs/ and answers 201 (409 if the session log already exists, 400
/// for bad names or non-JSON bodies).
class BundleServer {
 public:
  /// Creates <root>/logs/ and checks it is writable; throws IoError
  /// otherwise or when `root` is not a directory.
  explicit BundleServer(std::filesystem::path root);
  ~BundleServer();

  BundleServer(const BundleServer&) = delete;
  BundleServer& operator=(const BundleServer&) = delete;

  /// Binds to host:port (port 0 picks a free one) and returns the port.
  /// Throws IoError when the port is busy.
  int bind(const std::string& host, int port);

  /// Serves until stop(); call after bind().
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  std::filesystem::path root_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace afterimage::cli
