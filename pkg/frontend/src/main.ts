// Thin three.js binding: realizes the render plan and wires pointer and
// keyboard input to the controller. All behavior lives in the tested
// controller/state/render modules; this file only draws.

import * as THREE from "three";
import { GatewayClient } from "./api.js";
import { Controller } from "./controller.js";
import { renderPlan } from "./render.js";
import type { RenderNode } from "./render.js";

const HIGHLIGHT = 0xfff3b0; // light yellow outline for the hovered bronze

export async function run(apiBaseUrl: string): Promise<void> {
  const client = new GatewayClient(apiBaseUrl);
  const { scene: doc } = await client.getScene();
  const controller = new Controller(client, doc);

  const renderer = new THREE.WebGLRenderer({ antialias: true });
  renderer.setSize(window.innerWidth, window.innerHeight);
  document.body.appendChild(renderer.domElement);

  const world = new THREE.Scene();
  world.background = new THREE.Color(0x101014);
  const camera = new THREE.PerspectiveCamera(70, window.innerWidth / window.innerHeight, 0.1, 500);
  world.add(new THREE.AmbientLight(0xffffff, doc.lighting.ambient_intensity));
  const sun = new THREE.DirectionalLight(0xffffff, doc.lighting.directional.intensity);
  sun.position.set(...doc.lighting.directional.direction).multiplyScalar(-1);
  world.add(sun);

  const raycaster = new THREE.Raycaster();
  const pointer = new THREE.Vector2();
  let meshes: { mesh: unknown; node: RenderNode }[] = [];

  function rebuild(): void {
    world.children = world.children.filter((c: { userData?: { plan?: boolean } }) => !c.userData?.plan);
    meshes = [];
    for (const node of renderPlan(doc, controller.state)) {
      if (node.kind === "dialog") {
        showDialog(node.text);
        continue;
      }
      const mesh = meshFor(node);
      mesh.userData.plan = true;
      mesh.userData.nodeId = node.id;
      world.add(mesh);
      meshes.push({ mesh, node });
    }
    const cam = controller.state.camera;
    camera.position.set(...cam.position);
    camera.rotation.set(cam.pitch, cam.yaw, 0, "YXZ");
  }

  function meshFor(node: Exclude<RenderNode, { kind: "dialog" }>): any {
    if (node.kind === "exhibit") {
      const color = node.highlighted ? HIGHLIGHT : 0x8a6b3d;
      const m = new THREE.Mesh(
        new THREE.CylinderGeometry(0.15, 0.2, 0.4, 12),
        new THREE.MeshStandardMaterial({ color, emissive: node.highlighted ? HIGHLIGHT : 0 }),
      );
      m.position.set(...node.position);
      return m;
    }
    if (node.kind === "teleport-marker") {
      const m = new THREE.Mesh(
        new THREE.RingGeometry(0.3, 0.45, 24),
        new THREE.MeshBasicMaterial({ color: node.locked ? 0x884444 : 0x44cc88 }),
      );
      m.rotation.x = -Math.PI / 2;
      m.position.set(node.position[0], 0.02, node.position[2]);
      return m;
    }
    if (node.kind === "container") {
      const m = new THREE.Mesh(
        new THREE.BoxGeometry(0.8, 0.5, 0.8),
        new THREE.MeshStandardMaterial({ color: 0x3d5a80 }),
      );
      m.position.set(...node.position);
      return m;
    }
    const m = new THREE.Mesh(
      new THREE.SphereGeometry(0.06, 8, 8),
      new THREE.MeshBasicMaterial({ color: 0xffcc00 }),
    );
    m.position.set(...node.position);
    return m;
  }

  function showDialog(text: string): void {
    let el = document.getElementById("dialog");
    if (!el) {
      el = document.createElement("div");
      el.id = "dialog";
      el.className = "dialog";
      document.body.appendChild(el);
    }
    el.textContent = text;
    el.onclick = () => {
      controller.dismissDialog();
      el!.remove();
    };
  }

  window.addEventListener("pointermove", (ev: PointerEvent) => {
    pointer.set((ev.clientX / window.innerWidth) * 2 - 1, -(ev.clientY / window.innerHeight) * 2 + 1);
    raycaster.setFromCamera(pointer, camera);
    const hits = raycaster.intersectObjects(meshes.map((m) => m.mesh as any));
    const hit = hits[0]?.object?.userData?.nodeId ?? null;
    controller.hover(typeof hit === "string" ? hit : null);
  });

  window.addEventListener("pointerdown", (ev: PointerEvent) => {
    pointer.set((ev.clientX / window.innerWidth) * 2 - 1, -(ev.clientY / window.innerHeight) * 2 + 1);
    raycaster.setFromCamera(pointer, camera);
    const hit = raycaster.intersectObjects(meshes.map((m) => m.mesh as any))[0];
    if (!hit) return;
    const entry = meshes.find((m) => m.mesh === hit.object);
    if (!entry) return;
    const node = entry.node;
    if (node.kind === "teleport-marker") void controller.teleport(node.id);
    else if (node.kind === "panel-button") void controller.openPanel((node as any).exhibitId);
    else if (node.kind === "exhibit") {
      const grabbed = controller.state.session?.grabbed;
      if (grabbed === node.id) {
        void controller.release(node.id, { position: [hit.point.x, hit.point.y, hit.point.z] });
      } else {
        void controller.grab(node.id);
      }
    }
  });

  window.addEventListener("keydown", (ev: KeyboardEvent) => {
    if (ev.key === "g") void controller.enterGame();
    if (ev.key === "r") void controller.returnToRoaming();
    if (ev.key === "Enter") controller.requestSubmit();
    if (ev.key === "y" && controller.state.dialog?.kind === "confirm-submit") {
      void controller.confirmSubmit();
    }
  });

  controller.onChange(rebuild);
  await controller.start();

  function frame(): void {
    renderer.render(world, camera);
    requestAnimationFrame(frame);
  }
  frame();
}
