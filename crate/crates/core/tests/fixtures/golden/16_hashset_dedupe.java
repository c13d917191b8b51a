import java.util.HashSet;
import java.util.Set;

public class Main {
    public static void main(String[] args) {
        int[] data = {4, 4, 2, 9};                     // v1 s1
        Set<Integer> seen = new HashSet<>();           // v2 s2 (HashSet)
        for (int d : data) {                           // loop1 s3
            if (!seen.add(d)) {                        // if1 s4
                System.out.println("dup " + d);        // s5
            }
        }
    }
}
