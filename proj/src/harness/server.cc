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

#include "reqdrop/harness/server.h"

#include "httplib.h"
#include "reqdrop/error.h"

namespace reqdrop {

HttpService::HttpService() : server_(std::make_unique<httplib::Server>()) {}

HttpService::~HttpService() { Stop(); }

void HttpService::Start(const std::string& host, int port) {
  Require(!running(), "service already started");
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else if (server_->bind_to_port(host, port)) {
    port_ = port;
  } else {
    port_ = -1;
  }
  if (port_ <= 0) {
    Fail(ErrorKind::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpService::Stop() {
  if (!running()) return;
  server_->stop();
  thread_.join();
}

}  // namespace reqdrop
