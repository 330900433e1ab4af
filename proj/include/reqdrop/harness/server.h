// Copyright 2026 The Reqdrop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REQDROP_HARNESS_SERVER_H_
#define REQDROP_HARNESS_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "reqdrop/jsonl.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace reqdrop {

struct HttpReply {
  int status = 200;
  Json body;
};

// Owns an HTTP listener on a background thread. Subclasses register routes
// in their constructor through server().
class HttpService {
 public:
  HttpService();
  virtual ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Port 0 binds an ephemeral port; port() reports the bound one.
  void Start(const std::string& host, int port);
  // Stops accepting, lets in-flight handlers finish, then joins.
  void Stop();
  int port() const { return port_; }
  bool running() const { return thread_.joinable(); }

 protected:
  httplib::Server& server() { return *server_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_SERVER_H_
