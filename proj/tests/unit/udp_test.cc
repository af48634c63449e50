/*
 * Copyright 2026 The scaletwin Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <chrono>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "scaletwin/bus/envelope.h"
#include "scaletwin/bus/udp_transport.h"
#include "scaletwin/error.h"
#include "support/udp_loopback.h"

namespace scaletwin::bus {
namespace {

using scaletwin::testing::PublishPaced;
using scaletwin::testing::UdpLoopback;

TEST(EndpointTest, ParseAndFormat) {
  const Endpoint e = Endpoint::Parse("127.0.0.1:7400");
  EXPECT_EQ(e.host, "127.0.0.1");
  EXPECT_EQ(e.port, 7400);
  EXPECT_EQ(e.ToString(), "127.0.0.1:7400");
  EXPECT_THROW(Endpoint::Parse("localhost:1"), Error);
  EXPECT_THROW(Endpoint::Parse("127.0.0.1"), Error);
  EXPECT_THROW(Endpoint::Parse("127.0.0.1:70000"), Error);
}

TEST(TransportConfigTest, UdpNeedsPeer) {
  TransportConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.mode = TransportConfig::Mode::kUdp;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.peers.push_back({"127.0.0.1", 9});
  EXPECT_NO_THROW(cfg.Validate());
}

TEST(UdpSocketTest, BindFailureOnBusyPort) {
  UdpSocket first = UdpSocket::Bind({"127.0.0.1", 0});
  try {
    UdpSocket::Bind(first.local_endpoint());
    ADD_FAILURE() << "second bind succeeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBindFailure);
  }
}

TEST(UdpTransportTest, LoopbackThousandMessages) {
  UdpLoopback link;
  const std::vector<std::string> topics = {"odom"};
  auto sub = link.rx.Subscribe("odom", 2000);
  PublishPaced(link, topics, 1000);
  ASSERT_TRUE(link.WaitFor(topics, 1000, std::chrono::milliseconds(5000)));
  const auto got = sub->Drain();
  ASSERT_EQ(got.size(), 1000u);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i]->seq, i);
  const UdpTopicStats stats = link.rx_transport->Stats("odom");
  EXPECT_EQ(stats.received, 1000u);
  EXPECT_EQ(stats.lost, 0);
  EXPECT_EQ(stats.duplicates, 0u);
  EXPECT_EQ(link.tx_transport->send_errors(), 0u);
}

TEST(UdpTransportTest, DuplicateDatagramSuppressed) {
  UdpLoopback link;
  auto sub = link.rx.Subscribe("scan", 8);
  const Bytes frame = EncodeEnvelope({"scan", 0, 0, {1}});
  link.rx_transport->HandleDatagram(frame, "peer");
  link.rx_transport->HandleDatagram(frame, "peer");
  EXPECT_EQ(link.rx_transport->Stats("scan").duplicates, 1u);
  EXPECT_EQ(link.rx_transport->Stats("scan").received, 1u);
  EXPECT_EQ(sub->Drain().size(), 1u);
}

TEST(UdpTransportTest, SequenceGapCountsLoss) {
  UdpLoopback link;
  link.rx_transport->HandleDatagram(EncodeEnvelope({"scan", 0, 0, {}}), "peer");
  link.rx_transport->HandleDatagram(EncodeEnvelope({"scan", 2, 0, {}}), "peer");
  EXPECT_EQ(link.rx_transport->Stats("scan").lost, 1);
}

TEST(UdpTransportTest, PeersTrackedSeparately) {
  UdpLoopback link;
  link.rx_transport->HandleDatagram(EncodeEnvelope({"scan", 0, 0, {}}), "a");
  link.rx_transport->HandleDatagram(EncodeEnvelope({"scan", 0, 0, {}}), "b");
  EXPECT_EQ(link.rx_transport->Stats("scan").duplicates, 0u);
  EXPECT_EQ(link.rx_transport->Stats("scan").received, 2u);
}

TEST(UdpTransportTest, MalformedDatagramCountedNotFatal) {
  UdpLoopback link;
  const Bytes junk = {'X', 'X', 'X', 'X', 1};
  link.rx_transport->HandleDatagram(junk, "peer");
  EXPECT_EQ(link.rx_transport->decode_errors(), 1u);
}

TEST(UdpTransportTest, OversizedPayloadRejectedAtPublish) {
  UdpLoopback link;
  const Bytes big(kMaxUdpPayloadBytes + 1, 0);
  try {
    link.tx.Publish("map", big, 0);
    ADD_FAILURE() << "published";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPayloadTooLarge);
  }
  EXPECT_NO_THROW(link.tx.Publish("map", Bytes(kMaxUdpPayloadBytes, 0), 0));
}

TEST(UdpTransportTest, StartRequiresPeer) {
  Bus bus;
  EXPECT_THROW(UdpTransport::Start(bus, UdpSocket::Bind({"127.0.0.1", 0}), {}), Error);
  TransportConfig in_process;
  EXPECT_THROW(StartUdpPump(bus, in_process), Error);
}

}  // namespace
}  // namespace scaletwin::bus
