import java.util.ArrayList;
import java.util.Arrays;

class Observer {
    public void printNum() throws Exception {
        System.out.println("notified");
    }
}

public class PatternTest {
    public static void main(String[] args) throws Exception {
        int n;
        String myFSM = "Off";
        myFSM = "On";
        switch (myFSM) {
            case "Off":
                System.out.println("Off");
                break;
            case "On":
                System.out.println("On");
                break;
            default:
                System.out.println("Neither");
                break;
        }

        Observer obs1 = new Observer();
        Observer obs2 = new Observer();

        ArrayList<Observer> observerList = new ArrayList<Observer>(Arrays.asList(obs1));
        observerList.add(obs2);
        for (Observer observer : observerList) {
            observer.printNum();
        }

        System.out.println("Doubling");
        n = 21 * 2;

        System.out.println(n);
    }
}
